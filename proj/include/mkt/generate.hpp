#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "element_set.hpp"
#include "errors.hpp"
#include "extend.hpp"
#include "io.hpp"
#include "matroid.hpp"
#include "ordered.hpp"
#include "rational.hpp"

namespace mkt {

// All generation drives a bare mt19937_64 (whose sequence the standard
// pins down) through the helpers below, never a distribution object, so a
// seed produces the same artifacts on every platform.

namespace detail {

inline std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

inline std::vector<element_id> shuffled_ids(std::mt19937_64& rng, std::size_t n) {
    std::vector<element_id> ids(n);
    for (element_id e = 0; e < n; ++e) ids[e] = e;
    for (std::size_t i = n; i > 1; --i) std::swap(ids[i - 1], ids[pick(rng, 0, i - 1)]);
    return ids;
}

inline std::size_t random_capacity(std::mt19937_64& rng) {
    std::size_t roll = pick(rng, 0, 9);
    return roll == 0 ? 0 : 1 + roll % 3; // occasional zero-capacity group => loops
}

} // namespace detail

inline strict_order random_order(std::mt19937_64& rng, std::size_t n) {
    return strict_order::from_best_first(detail::shuffled_ids(rng, n));
}

inline matroid random_matroid(std::mt19937_64& rng, matroid::kind_t family, std::size_t n) {
    using detail::pick;
    switch (family) {
    case matroid::kind_t::uniform: return matroid::uniform(n, pick(rng, 0, n));
    case matroid::kind_t::partition: {
        std::size_t class_count = n == 0 ? 0 : pick(rng, 1, n);
        std::vector<element_set> classes(class_count, element_set(n));
        for (element_id e = 0; e < n; ++e) classes[pick(rng, 0, class_count - 1)].add(e);
        std::vector<element_set> kept;
        std::vector<std::size_t> caps;
        for (auto& cls : classes)
            if (!cls.empty()) {
                kept.push_back(std::move(cls));
                caps.push_back(detail::random_capacity(rng));
            }
        return matroid::partition(n, std::move(kept), std::move(caps));
    }
    case matroid::kind_t::graphic: {
        std::size_t vertices = pick(rng, 2, std::max<std::size_t>(2, n / 2 + 1));
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        edges.reserve(n);
        for (element_id e = 0; e < n; ++e)
            edges.emplace_back(pick(rng, 0, vertices - 1), pick(rng, 0, vertices - 1));
        return matroid::graphic(vertices, std::move(edges));
    }
    case matroid::kind_t::laminar: {
        std::vector<element_id> ids = detail::shuffled_ids(rng, n);
        std::vector<element_set> sets;
        std::vector<std::size_t> caps;
        auto emit = [&](std::size_t lo, std::size_t hi) {
            element_set s(n);
            for (std::size_t i = lo; i < hi; ++i) s.add(ids[i]);
            sets.push_back(s);
            caps.push_back(pick(rng, 1, std::max<std::size_t>(1, (hi - lo + 1) / 2 + 1)));
        };
        auto split = [&](auto&& self, std::size_t lo, std::size_t hi, std::size_t depth) -> void {
            if (hi - lo == 0) return;
            if (pick(rng, 0, 2) != 0) emit(lo, hi);
            if (depth == 0 || hi - lo < 2) return;
            std::size_t mid = pick(rng, lo + 1, hi - 1);
            self(self, lo, mid, depth - 1);
            self(self, mid, hi, depth - 1);
        };
        split(split, 0, n, 3);
        return matroid::laminar(n, std::move(sets), std::move(caps));
    }
    case matroid::kind_t::explicit_sets: {
        if (n > 12) throw input_error("random explicit matroid capped at 12 elements");
        constexpr matroid::kind_t shapes[] = {matroid::kind_t::uniform, matroid::kind_t::partition,
                                              matroid::kind_t::graphic, matroid::kind_t::laminar};
        matroid shape = random_matroid(rng, shapes[detail::pick(rng, 0, 3)], n);
        std::vector<element_set> family;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            element_set s = element_set::from_mask(n, mask);
            if (shape.is_independent(s)) family.push_back(s);
        }
        return matroid::from_independent_sets(n, family);
    }
    }
    throw input_error("random_matroid: unknown family");
}

inline std::vector<rational> random_values(std::mt19937_64& rng, std::size_t n,
                                           const std::vector<rational>& levels) {
    if (levels.empty()) throw input_error("random_values: at least one value level required");
    std::vector<rational> values(n);
    for (auto& v : values) v = levels[detail::pick(rng, 0, levels.size() - 1)];
    return values;
}

// Seeded random instance with both matroids, values drawn from the given
// levels (a small grid induces plenty of ties), and the given delta.
inline instance gen_random(std::uint64_t seed, std::size_t n, matroid::kind_t family1,
                           matroid::kind_t family2, const std::vector<rational>& value_levels,
                           const rational& delta) {
    if (n > 64) throw input_error("gen_random: ground set capped at 64 elements");
    for (const auto& level : value_levels)
        if (level < rational(0)) throw input_error("gen_random: negative value level");
    std::mt19937_64 rng(seed);
    instance inst{random_matroid(rng, family1, n), random_matroid(rng, family2, n),
                  random_values(rng, n, value_levels), random_values(rng, n, value_levels), delta};
    inst.validate();
    return inst;
}

// k disjoint copies of the three-edge gadget (a1-b1, a2-b1, a2-b2, every
// value 1): full ties, maximum stable matching of size 2k, while a badly
// tie-broken run of plain deferred acceptance keeps only the middle edge of
// each gadget for size k.
inline smti_instance gen_tight_family(std::size_t k) {
    smti_instance smti;
    smti.men = 2 * k;
    smti.women = 2 * k;
    for (std::size_t g = 0; g < k; ++g) {
        smti.edges.push_back({2 * g, 2 * g, rational(1), rational(1)});
        smti.edges.push_back({2 * g + 1, 2 * g, rational(1), rational(1)});
        smti.edges.push_back({2 * g + 1, 2 * g + 1, rational(1), rational(1)});
    }
    return smti;
}

// Tie-priority sequence that sends plain deferred acceptance into the small
// outcome on gen_tight_family: every gadget's middle edge first.
inline std::vector<element_id> tight_family_bad_tiebreak(std::size_t k) {
    std::vector<element_id> priority;
    priority.reserve(3 * k);
    for (std::size_t g = 0; g < k; ++g) priority.push_back(3 * g + 1);
    for (std::size_t g = 0; g < k; ++g) {
        priority.push_back(3 * g);
        priority.push_back(3 * g + 2);
    }
    return priority;
}

// Random matching instance with ties: random simple bipartite edges, values
// off a small grid.  Used by the tightness search.
inline smti_instance random_smti(std::mt19937_64& rng, std::size_t max_side,
                                 std::size_t max_edges, const std::vector<rational>& levels) {
    using detail::pick;
    smti_instance smti;
    smti.men = pick(rng, 1, max_side);
    smti.women = pick(rng, 1, max_side);
    std::vector<std::pair<std::size_t, std::size_t>> all_pairs;
    for (std::size_t m = 0; m < smti.men; ++m)
        for (std::size_t w = 0; w < smti.women; ++w) all_pairs.emplace_back(m, w);
    for (std::size_t i = all_pairs.size(); i > 1; --i)
        std::swap(all_pairs[i - 1], all_pairs[pick(rng, 0, i - 1)]);
    std::size_t edge_count = pick(rng, 1, std::min(max_edges, all_pairs.size()));
    for (std::size_t i = 0; i < edge_count; ++i) {
        auto [m, w] = all_pairs[i];
        smti.edges.push_back({m, w, levels[pick(rng, 0, levels.size() - 1)],
                              levels[pick(rng, 0, levels.size() - 1)]});
    }
    return smti;
}

struct suite_result {
    std::size_t checked = 0;
    std::size_t passed = 0;
    std::vector<std::string> failures;

    [[nodiscard]] bool all_passed() const { return checked > 0 && passed == checked; }
};

// Randomized exchange-matching suite: draw a matroid and an order, take the
// greedy-optimal base A and the greedy base B of the complement; when B
// reaches full rank, demand a perfect exchange matching and re-verify every
// matched pair against the raw oracle.  Draws that leave the complement
// rank-deficient don't count as checks.
inline suite_result run_exchange_matching_suite(std::uint64_t seed, std::size_t count,
                                                const std::vector<matroid::kind_t>& families,
                                                std::size_t max_n) {
    if (families.empty() || max_n == 0)
        throw input_error("exchange suite: need at least one family and a positive size");
    std::mt19937_64 rng(seed);
    suite_result result;
    std::size_t attempts_left = 200 * count + 1000;
    while (result.checked < count && attempts_left-- > 0) {
        std::size_t n = detail::pick(rng, 1, max_n);
        matroid m = random_matroid(rng, families[detail::pick(rng, 0, families.size() - 1)], n);
        strict_order order = random_order(rng, n);
        element_set a = optimal_base(m, order, element_set::full(n));
        element_set b = optimal_base(m, order, element_set::full(n) - a);
        if (b.count() != a.count()) continue;
        ++result.checked;
        std::string failure;
        try {
            exchange_matching matching = perfect_exchange_matching(m, order, a, b);
            element_set seen_a(n), seen_b(n);
            for (const auto& [ea, eb] : matching.pairs) {
                if (!order.prefers(ea, eb)) failure = "matched pair not order-improving";
                if (!m.is_independent(b.without(eb).with(ea)))
                    failure = "matched swap broke independence";
                seen_a.add(ea);
                seen_b.add(eb);
            }
            if (!(seen_a == a) || !(seen_b == b)) failure = "matching is not perfect";
        } catch (const std::exception& e) {
            failure = e.what();
        }
        if (failure.empty())
            ++result.passed;
        else if (result.failures.size() < 5)
            result.failures.push_back(failure + " [n=" + std::to_string(n) + "]");
    }
    return result;
}

// Randomized worst-circuit suite: draw a matroid and an order, grow a
// random independent set, force a fundamental circuit through a random
// outside element, and check the circuit's worst element avoids the optimal
// base.  Draws with no dependent extension available don't count.
inline suite_result run_worst_circuit_suite(std::uint64_t seed, std::size_t count,
                                            const std::vector<matroid::kind_t>& families,
                                            std::size_t max_n) {
    if (families.empty() || max_n == 0)
        throw input_error("circuit suite: need at least one family and a positive size");
    std::mt19937_64 rng(seed);
    suite_result result;
    std::size_t attempts_left = 200 * count + 1000;
    while (result.checked < count && attempts_left-- > 0) {
        std::size_t n = detail::pick(rng, 1, max_n);
        matroid m = random_matroid(rng, families[detail::pick(rng, 0, families.size() - 1)], n);
        strict_order order = random_order(rng, n);
        element_set sample(n);
        for (element_id e = 0; e < n; ++e)
            if (detail::pick(rng, 0, 1) == 1) sample.add(e);
        element_set independent(n);
        for (element_id e : detail::shuffled_ids(rng, n)) {
            if (!sample.contains(e)) continue;
            independent.add(e);
            if (!m.is_independent(independent)) independent.remove(e);
        }
        std::vector<element_id> dependent_extensions;
        for (element_id x = 0; x < n; ++x)
            if (!independent.contains(x) && !m.is_independent(independent.with(x)))
                dependent_extensions.push_back(x);
        if (dependent_extensions.empty()) continue;
        element_id x =
            dependent_extensions[detail::pick(rng, 0, dependent_extensions.size() - 1)];
        auto circuit = fundamental_circuit(m, independent, x);
        ++result.checked;
        std::string failure;
        try {
            element_set a = optimal_base(m, order, element_set::full(n));
            if (!check_worst_circuit_element(m, order, a, *circuit))
                failure = "worst circuit element landed in the optimal base";
        } catch (const std::exception& e) {
            failure = e.what();
        }
        if (failure.empty())
            ++result.passed;
        else if (result.failures.size() < 5)
            result.failures.push_back(failure + " [n=" + std::to_string(n) + "]");
    }
    return result;
}

} // namespace mkt
