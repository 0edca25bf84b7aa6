#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "element_set.hpp"
#include "errors.hpp"
#include "kernel.hpp"
#include "matroid.hpp"
#include "ordered.hpp"
#include "rational.hpp"

namespace mkt {

// How much better an entering element must be before it counts as blocking:
// the minimum of its two improvements, their sum, or their maximum must
// reach delta.  `kernel` is the tie-free notion that ignores delta and just
// demands strict improvement on both sides.
enum class stability_notion { min, sum, max, kernel };

inline const char* to_string(stability_notion notion) {
    switch (notion) {
    case stability_notion::min: return "min";
    case stability_notion::sum: return "sum";
    case stability_notion::max: return "max";
    case stability_notion::kernel: return "kernel";
    }
    throw invariant_error("to_string: unknown stability notion");
}

// A near-stability problem: two matroids over one ground set, nonnegative
// preference values on each side (equal values are ties), and the blocking
// threshold delta > 0.
struct instance {
    matroid m1;
    matroid m2;
    std::vector<rational> p1;
    std::vector<rational> p2;
    rational delta;

    [[nodiscard]] std::size_t size() const { return m1.ground_size(); }

    void validate() const {
        const std::size_t n = m1.ground_size();
        if (m2.ground_size() != n)
            throw input_error("instance: matroids have different ground sizes");
        if (p1.size() != n || p2.size() != n)
            throw input_error("instance: one preference value per element per side required");
        for (const auto& values : {p1, p2})
            for (const auto& v : values)
                if (v < rational(0)) throw input_error("instance: negative preference value");
        if (!(rational(0) < delta)) throw input_error("instance: delta must be positive");
    }

    friend bool operator==(const instance&, const instance&) = default;
};

// Matroid over `copies` parallel copies of every element of a base matroid.
// Copy j of origin u has id u * copies + j.  A set is independent when it
// holds at most one copy per origin and its set of origins is independent
// in the base matroid.
class parallel_copy_matroid {
  public:
    parallel_copy_matroid(matroid base, std::size_t copies)
        : base_(std::move(base)), copies_(copies) {
        if (copies == 0) throw contract_error("parallel_copy_matroid: zero copies");
    }

    [[nodiscard]] std::size_t ground_size() const { return base_.ground_size() * copies_; }
    [[nodiscard]] std::size_t copies() const { return copies_; }
    [[nodiscard]] const matroid& base() const { return base_; }

    [[nodiscard]] element_id id_of(element_id origin, std::size_t copy) const {
        return origin * copies_ + copy;
    }
    [[nodiscard]] element_id origin_of(element_id extended) const { return extended / copies_; }
    [[nodiscard]] std::size_t copy_of(element_id extended) const { return extended % copies_; }

    [[nodiscard]] bool is_independent(const element_set& x) const {
        if (x.universe() != ground_size())
            throw input_error("parallel_copy_matroid: set universe does not match");
        element_set origins(base_.ground_size());
        bool copy_clash = false;
        x.for_each([&](element_id e) {
            element_id origin = origin_of(e);
            if (origins.contains(origin))
                copy_clash = true;
            else
                origins.add(origin);
        });
        return !copy_clash && base_.is_independent(origins);
    }

    // Origins touched by a set holding at most one copy per origin.
    [[nodiscard]] element_set project(const element_set& x) const {
        if (x.universe() != ground_size())
            throw input_error("parallel_copy_matroid: set universe does not match");
        element_set origins(base_.ground_size());
        x.for_each([&](element_id e) {
            element_id origin = origin_of(e);
            if (origins.contains(origin))
                throw contract_error("project: two copies of origin " + std::to_string(origin));
            origins.add(origin);
        });
        return origins;
    }

  private:
    matroid base_;
    std::size_t copies_;
};

struct extended_element {
    element_id origin;
    std::size_t copy;
};

// Tie-free instance built from a weakly ordered one by replacing each
// element with parallel copies spread across preference levels.  Kernels of
// this pair project to near-stable sets of the original instance.
struct extended_instance {
    stability_notion notion = stability_notion::min;
    std::size_t copies = 0;
    std::vector<extended_element> elements; // index = extended id
    parallel_copy_matroid m1;
    parallel_copy_matroid m2;
    strict_order order1;
    strict_order order2;
    std::vector<rational> pstar1; // extended values inducing order1/order2
    std::vector<rational> pstar2;
    rational level_boost;          // K, larger than every original value
    std::vector<rational> d_levels; // interior threshold ladder (sum notion only)

    [[nodiscard]] std::size_t size() const { return elements.size(); }
};

// K: one more than the largest preference value on either side, so adding K
// jumps above every original level.
inline rational preference_ceiling(const instance& inst) {
    rational top(0);
    for (const auto& values : {inst.p1, inst.p2})
        for (const auto& v : values) top = max(top, v);
    return top + rational(1);
}

// Distinct values strictly between 0 and delta of the form p_i(u) - p_i(v)
// or delta - p_i(u) + p_i(v), with u, v ranging over elements and the
// absent element (value 0).  Ascending; symmetric under d -> delta - d.
// Never empty: a blocker displacing on both sides with both gains >= delta
// can only be ruled out by a copy boosted on both sides, and such a copy
// exists only for interior levels, so when no value difference lands
// strictly inside (0, delta) the midpoint delta/2 is used (the only
// self-symmetric choice, keeping d -> delta - d intact).
inline std::vector<rational> compute_d_levels(const instance& inst) {
    std::set<rational> levels;
    auto consider = [&](const rational& d) {
        if (rational(0) < d && d < inst.delta) levels.insert(d);
    };
    for (const auto& values : {inst.p1, inst.p2}) {
        std::vector<rational> with_absent = values;
        with_absent.push_back(rational(0));
        for (const auto& a : with_absent)
            for (const auto& b : with_absent) {
                consider(a - b);
                consider(inst.delta - a + b);
            }
    }
    if (levels.empty()) levels.insert(inst.delta / rational(2));
    return {levels.begin(), levels.end()};
}

namespace detail {

// Copy-index preference used to finish breaking value ties: on side 1 a
// higher copy index wins, on side 2 a lower one, except the two swapped
// adjacent pairs of the max notion.  Sequences are best-first.
inline std::vector<std::size_t> copy_tie_priority(stability_notion notion, int side,
                                                  std::size_t copies) {
    std::vector<std::size_t> best_first(copies);
    if (notion == stability_notion::max) {
        if (side == 1)
            best_first = {3, 2, 0, 1};
        else
            best_first = {0, 1, 3, 2};
        return best_first;
    }
    for (std::size_t i = 0; i < copies; ++i)
        best_first[i] = side == 1 ? copies - 1 - i : i;
    return best_first;
}

inline strict_order extended_order(const std::vector<extended_element>& elements,
                                   const std::vector<rational>& pstar,
                                   const std::vector<std::size_t>& copy_best_first) {
    std::vector<std::size_t> copy_pos(copy_best_first.size());
    for (std::size_t pos = 0; pos < copy_best_first.size(); ++pos)
        copy_pos[copy_best_first[pos]] = pos;
    std::vector<element_id> seq(elements.size());
    for (element_id e = 0; e < elements.size(); ++e) seq[e] = e;
    std::sort(seq.begin(), seq.end(), [&](element_id a, element_id b) {
        if (pstar[a] != pstar[b]) return pstar[b] < pstar[a];
        if (elements[a].copy != elements[b].copy)
            return copy_pos[elements[a].copy] < copy_pos[elements[b].copy];
        return elements[a].origin < elements[b].origin;
    });
    return strict_order::from_best_first(std::move(seq));
}

// Assembles an extension given per-copy value formulas for both sides.
template <typename Value1, typename Value2>
extended_instance build_extension(const instance& inst, stability_notion notion,
                                  std::size_t copies, std::vector<rational> d_levels,
                                  Value1&& value1, Value2&& value2) {
    inst.validate();
    const std::size_t n = inst.size();
    std::vector<extended_element> elements;
    elements.reserve(n * copies);
    for (element_id u = 0; u < n; ++u)
        for (std::size_t copy = 0; copy < copies; ++copy) elements.push_back({u, copy});
    std::vector<rational> pstar1(elements.size()), pstar2(elements.size());
    for (element_id e = 0; e < elements.size(); ++e) {
        pstar1[e] = value1(elements[e].origin, elements[e].copy);
        pstar2[e] = value2(elements[e].origin, elements[e].copy);
    }
    strict_order order1 = extended_order(elements, pstar1, copy_tie_priority(notion, 1, copies));
    strict_order order2 = extended_order(elements, pstar2, copy_tie_priority(notion, 2, copies));
    return extended_instance{notion,
                             copies,
                             std::move(elements),
                             parallel_copy_matroid(inst.m1, copies),
                             parallel_copy_matroid(inst.m2, copies),
                             std::move(order1),
                             std::move(order2),
                             std::move(pstar1),
                             std::move(pstar2),
                             preference_ceiling(inst),
                             std::move(d_levels)};
}

} // namespace detail

// Three copies per element.  Side 1 values from copy 0 down: p+K+delta,
// p+K, p; side 2 mirrored: p, p+K, p+K+delta.  On equal side-1 values the
// middle copy beats the top one (and symmetrically on side 2), which the
// copy-priority directions encode.
inline extended_instance extend_min(const instance& inst) {
    rational k = preference_ceiling(inst);
    auto value1 = [&](element_id u, std::size_t copy) {
        if (copy == 0) return inst.p1[u] + k + inst.delta;
        if (copy == 1) return inst.p1[u] + k;
        return inst.p1[u];
    };
    auto value2 = [&](element_id u, std::size_t copy) {
        if (copy == 0) return inst.p2[u];
        if (copy == 1) return inst.p2[u] + k;
        return inst.p2[u] + k + inst.delta;
    };
    return detail::build_extension(inst, stability_notion::min, 3, {}, value1, value2);
}

// k+2 copies per element, where d_1 < ... < d_k is the interior threshold
// ladder.  Side 1: copy l <= k carries p + K + delta - d_l (index
// convention d_0 = 0), the last copy carries plain p.  Side 2 mirrors the
// ladder from the other end: copy 0 carries plain p and copy l >= 1 carries
// p + K + delta - d_{k-l+1}, the same d_0 = 0 convention giving the top
// copy the full boost.
inline extended_instance extend_sum(const instance& inst) {
    rational boost = preference_ceiling(inst);
    std::vector<rational> ladder = compute_d_levels(inst);
    const std::size_t k = ladder.size();
    auto d = [ladder](std::size_t level) {
        return level == 0 ? rational(0) : ladder[level - 1];
    };
    auto value1 = [&inst, boost, k, d](element_id u, std::size_t copy) {
        if (copy == k + 1) return inst.p1[u];
        return inst.p1[u] + boost + inst.delta - d(copy);
    };
    auto value2 = [&inst, boost, k, d](element_id u, std::size_t copy) {
        if (copy == 0) return inst.p2[u];
        return inst.p2[u] + boost + inst.delta - d(k - copy + 1);
    };
    return detail::build_extension(inst, stability_notion::sum, k + 2, std::move(ladder), value1,
                                   value2);
}

// Four copies per element.  Side 1 gives copies 0 and 1 the full p+K+delta,
// copy 2 p+K, copy 3 plain p; side 2 mirrors.  The equal-value pairs are
// ordered copy 0 over copy 1 on side 1 and copy 3 over copy 2 on side 2.
inline extended_instance extend_max(const instance& inst) {
    rational k = preference_ceiling(inst);
    auto value1 = [&](element_id u, std::size_t copy) {
        if (copy <= 1) return inst.p1[u] + k + inst.delta;
        if (copy == 2) return inst.p1[u] + k;
        return inst.p1[u];
    };
    auto value2 = [&](element_id u, std::size_t copy) {
        if (copy == 0) return inst.p2[u];
        if (copy == 1) return inst.p2[u] + k;
        return inst.p2[u] + k + inst.delta;
    };
    return detail::build_extension(inst, stability_notion::max, 4, {}, value1, value2);
}

inline extended_instance extend_for(const instance& inst, stability_notion notion) {
    switch (notion) {
    case stability_notion::min: return extend_min(inst);
    case stability_notion::sum: return extend_sum(inst);
    case stability_notion::max: return extend_max(inst);
    case stability_notion::kernel: break;
    }
    throw contract_error("extend_for: extension exists for the min/sum/max notions only");
}

// Origins of a set of copies.  The set must be independent in both extended
// matroids; in particular two copies of one origin are a contract violation.
inline element_set project(const extended_instance& ext, const element_set& a_star) {
    element_set origins = ext.m1.project(a_star);
    if (!ext.m1.is_independent(a_star) || !ext.m2.is_independent(a_star))
        throw contract_error("project: set is not independent in both extended matroids");
    return origins;
}

inline std::string copy_label(stability_notion notion, std::size_t copy) {
    if (notion == stability_notion::min) {
        if (copy == 0) return "x";
        if (copy == 1) return "y";
        return "z";
    }
    return "x" + std::to_string(copy);
}

// Equivalent single-level matroid for a parallel-copy wrapper, used to dump
// extended instances in the plain instance format and to cross-check the
// wrapper oracle.  Uniform/partition/laminar bases become laminar (lifted
// groups plus one unit-capacity group per origin); graphic becomes the same
// multigraph with parallel edges (two copies of an edge already close a
// cycle, so the per-origin cap is implicit); explicit families are
// re-enumerated when the extended ground set still fits the 16-element cap.
inline matroid flatten_parallel_copies(const parallel_copy_matroid& pc) {
    const matroid& base = pc.base();
    const std::size_t n = base.ground_size(), copies = pc.copies(), big = n * copies;
    auto lift = [&](const element_set& origins) {
        element_set lifted(big);
        origins.for_each([&](element_id u) {
            for (std::size_t c = 0; c < copies; ++c) lifted.add(pc.id_of(u, c));
        });
        return lifted;
    };
    auto origin_groups = [&](std::vector<element_set>& sets, std::vector<std::size_t>& caps) {
        for (element_id u = 0; u < n; ++u) {
            element_set group(big);
            for (std::size_t c = 0; c < copies; ++c) group.add(pc.id_of(u, c));
            sets.push_back(group);
            caps.push_back(1);
        }
    };
    switch (base.kind()) {
    case matroid::kind_t::uniform: {
        std::vector<element_set> sets{element_set::full(big)};
        std::vector<std::size_t> caps{base.uniform_rank()};
        origin_groups(sets, caps);
        return matroid::laminar(big, std::move(sets), std::move(caps));
    }
    case matroid::kind_t::partition:
    case matroid::kind_t::laminar: {
        std::vector<element_set> sets;
        std::vector<std::size_t> caps = base.capacities();
        sets.reserve(base.groups().size() + n);
        for (const auto& g : base.groups()) sets.push_back(lift(g));
        origin_groups(sets, caps);
        return matroid::laminar(big, std::move(sets), std::move(caps));
    }
    case matroid::kind_t::graphic: {
        std::vector<std::pair<std::size_t, std::size_t>> edges(big);
        for (element_id u = 0; u < n; ++u)
            for (std::size_t c = 0; c < copies; ++c) edges[pc.id_of(u, c)] = base.edges()[u];
        return matroid::graphic(base.vertex_count(), std::move(edges));
    }
    case matroid::kind_t::explicit_sets: {
        if (big > 16)
            throw input_error("flatten_parallel_copies: extended explicit family exceeds 16 "
                              "elements");
        std::vector<element_set> family;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << big); ++mask) {
            element_set s = element_set::from_mask(big, mask);
            if (pc.is_independent(s)) family.push_back(s);
        }
        return matroid::from_independent_sets(big, family);
    }
    }
    throw invariant_error("flatten_parallel_copies: unknown matroid kind");
}

} // namespace mkt
