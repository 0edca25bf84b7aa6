#pragma once

#include <optional>
#include <string>
#include <vector>

#include "element_set.hpp"
#include "errors.hpp"
#include "matroid.hpp"
#include "ordered.hpp"
#include "rational.hpp"

namespace mkt {

// Two matroids over one ground set with a strict preference order each.
template <independence_oracle M1, independence_oracle M2 = M1>
struct ordered_pair {
    M1 m1;
    M2 m2;
    strict_order order1;
    strict_order order2;
};

using ordered_matroid_pair = ordered_pair<matroid, matroid>;

// Two matroids over one ground set with weak preferences given by values
// (equal values are ties).  Values must be nonnegative; an absent element
// counts as value 0.
struct weak_pair {
    matroid m1;
    matroid m2;
    std::vector<rational> p1;
    std::vector<rational> p2;
};

// Witness that element y can force its way into X: per matroid, v is the
// element y displaces (nullopt when X + y is independent outright) and the
// improvement is p(y) - p(v) with p(nullopt) = 0.
struct blocking_certificate {
    element_id y = 0;
    std::optional<element_id> v1;
    std::optional<element_id> v2;
    rational improvement1;
    rational improvement2;

    [[nodiscard]] std::string str() const {
        auto side = [](const std::optional<element_id>& v) {
            return v ? std::to_string(*v) : std::string("none");
        };
        return "y=" + std::to_string(y) + " v1=" + side(v1) + " v2=" + side(v2) +
               " improvement1=" + improvement1.str() + " improvement2=" + improvement2.str();
    }
};

// Deferred acceptance over two ordered matroids: repeatedly take the
// best base X of m1 among never-rejected elements, keep its best m2-subbase
// Y, reject X \ Y, and stop when nothing is rejected.  The result is a
// kernel of the pair: no outside element can strictly improve its way in
// on both sides.  Terminates within |S| rounds because the rejected set
// grows every non-final round.
template <independence_oracle M1, independence_oracle M2>
element_set fleiner_kernel(const M1& m1, const M2& m2, const strict_order& order1,
                           const strict_order& order2) {
    const std::size_t n = m1.ground_size();
    if (m2.ground_size() != n || order1.size() != n || order2.size() != n)
        throw contract_error("fleiner_kernel: ground sets and orders must agree");
    element_set rejected(n);
    const element_set everything = element_set::full(n);
    for (std::size_t round = 0; round <= n + 1; ++round) {
        element_set x = optimal_base(m1, order1, everything - rejected);
        element_set y = optimal_base(m2, order2, x);
        if (y == x) return y;
        rejected = rejected | (x - y);
    }
    throw invariant_error("fleiner_kernel: failed to converge within |S| rounds");
}

template <independence_oracle M1, independence_oracle M2>
element_set fleiner_kernel(const ordered_pair<M1, M2>& pair) {
    return fleiner_kernel(pair.m1, pair.m2, pair.order1, pair.order2);
}

// Best way for y to enter X on one matroid side, if any: either X + y is
// independent (keeps improvement p[y]), or y displaces the cheapest element
// of its fundamental circuit (improvement p[y] - p[v], maximized by picking
// v with minimum value; ties broken toward the lowest id).  nullopt when y
// cannot enter at all, i.e. its circuit offers no removable mate.
struct entry_option {
    std::optional<element_id> swap_out;
    rational improvement;
};

template <independence_oracle M>
std::optional<entry_option> best_entry_option(const M& m, const std::vector<rational>& values,
                                              const element_set& x, element_id y) {
    if (m.is_independent(x.with(y))) return entry_option{std::nullopt, values[y]};
    auto circuit = fundamental_circuit(m, x, y);
    if (!circuit) throw invariant_error("best_entry_option: dependent extension had no circuit");
    std::optional<element_id> cheapest;
    circuit->for_each([&](element_id v) {
        if (v == y) return;
        if (!cheapest || values[v] < values[*cheapest]) cheapest = v;
    });
    if (!cheapest) return std::nullopt;
    return entry_option{cheapest, values[y] - values[*cheapest]};
}

// First element (by ascending id) outside X that blocks it in the kernel
// sense: on BOTH sides it either fits outright or can displace a strictly
// worse element.  Works over weak preferences; a strict order is the
// special case with distinct values.  Returns nullopt when X is a kernel.
template <independence_oracle M1, independence_oracle M2>
std::optional<blocking_certificate> find_kernel_blocker(const M1& m1, const M2& m2,
                                                        const std::vector<rational>& p1,
                                                        const std::vector<rational>& p2,
                                                        const element_set& x) {
    const std::size_t n = m1.ground_size();
    if (m2.ground_size() != n || p1.size() != n || p2.size() != n || x.universe() != n)
        throw contract_error("find_kernel_blocker: ground sets must agree");
    if (!m1.is_independent(x) || !m2.is_independent(x))
        throw contract_error("find_kernel_blocker: set is not common independent");
    auto side_blocks = [](const std::optional<entry_option>& option) {
        return option && (!option->swap_out || rational(0) < option->improvement);
    };
    for (element_id y = 0; y < n; ++y) {
        if (x.contains(y)) continue;
        auto o1 = best_entry_option(m1, p1, x, y);
        if (!side_blocks(o1)) continue;
        auto o2 = best_entry_option(m2, p2, x, y);
        if (!side_blocks(o2)) continue;
        return blocking_certificate{y, o1->swap_out, o2->swap_out, o1->improvement,
                                    o2->improvement};
    }
    return std::nullopt;
}

inline std::optional<blocking_certificate> find_kernel_blocker(const weak_pair& pair,
                                                               const element_set& x) {
    return find_kernel_blocker(pair.m1, pair.m2, pair.p1, pair.p2, x);
}

// Surrogate values for a strict order: n - key, so better-ranked elements
// get larger values, all positive, and the absent element's 0 sits below
// every real one.
inline std::vector<rational> preference_values_from_order(const strict_order& order) {
    std::vector<rational> values(order.size());
    for (element_id e = 0; e < order.size(); ++e)
        values[e] = rational(static_cast<std::int64_t>(order.size() - order.key(e)));
    return values;
}

template <independence_oracle M1, independence_oracle M2>
std::optional<blocking_certificate> find_kernel_blocker(const M1& m1, const M2& m2,
                                                        const strict_order& order1,
                                                        const strict_order& order2,
                                                        const element_set& x) {
    return find_kernel_blocker(m1, m2, preference_values_from_order(order1),
                               preference_values_from_order(order2), x);
}

template <independence_oracle M1, independence_oracle M2>
std::optional<blocking_certificate> find_kernel_blocker(const ordered_pair<M1, M2>& pair,
                                                        const element_set& x) {
    return find_kernel_blocker(pair.m1, pair.m2, pair.order1, pair.order2, x);
}

} // namespace mkt
