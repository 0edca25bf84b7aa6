#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "element_set.hpp"
#include "errors.hpp"
#include "matroid.hpp"
#include "rational.hpp"

namespace mkt {

// Total strict preference order over a ground set.  key(e) is e's position
// from the top: key 0 is the single most preferred element, and the keys
// form a permutation of 0..n-1.
class strict_order {
  public:
    strict_order() = default;

    static strict_order from_best_first(std::vector<element_id> sequence) {
        strict_order o;
        o.best_first_ = std::move(sequence);
        o.key_.assign(o.best_first_.size(), 0);
        std::vector<bool> seen(o.best_first_.size(), false);
        for (std::size_t pos = 0; pos < o.best_first_.size(); ++pos) {
            element_id e = o.best_first_[pos];
            if (e >= o.best_first_.size() || seen[e])
                throw input_error("strict_order: sequence is not a permutation of the ground set");
            seen[e] = true;
            o.key_[e] = pos;
        }
        return o;
    }

    static strict_order from_keys(const std::vector<std::size_t>& keys) {
        std::vector<element_id> seq(keys.size());
        std::vector<bool> seen(keys.size(), false);
        for (element_id e = 0; e < keys.size(); ++e) {
            if (keys[e] >= keys.size() || seen[keys[e]])
                throw input_error("strict_order: keys are not a permutation");
            seen[keys[e]] = true;
            seq[keys[e]] = e;
        }
        return from_best_first(std::move(seq));
    }

    [[nodiscard]] std::size_t size() const { return key_.size(); }
    [[nodiscard]] std::size_t key(element_id e) const {
        if (e >= key_.size()) throw input_error("strict_order: element outside ground set");
        return key_[e];
    }
    // True when a is strictly preferred to b.
    [[nodiscard]] bool prefers(element_id a, element_id b) const { return key(a) < key(b); }
    [[nodiscard]] const std::vector<element_id>& best_first() const { return best_first_; }

    [[nodiscard]] element_id worst_of(const element_set& subset) const {
        if (subset.universe() != size())
            throw contract_error("strict_order: subset universe does not match");
        std::optional<element_id> worst;
        subset.for_each([&](element_id e) {
            if (!worst || key_[e] > key_[*worst]) worst = e;
        });
        if (!worst) throw contract_error("strict_order: worst element of empty set");
        return *worst;
    }

    friend bool operator==(const strict_order&, const strict_order&) = default;

  private:
    std::vector<std::size_t> key_;
    std::vector<element_id> best_first_;
};

// Breaks a weak order given by values into a strict one: higher value first,
// ties resolved by position in tie_priority (earlier wins), which must be a
// permutation of the ground set.  Pass ascending ids for a neutral break.
inline strict_order order_from_values(const std::vector<rational>& values,
                                      const std::vector<element_id>& tie_priority) {
    const std::size_t n = values.size();
    std::vector<std::size_t> tie_pos(n, n);
    if (tie_priority.size() != n)
        throw input_error("order_from_values: tie priority must list every element");
    for (std::size_t pos = 0; pos < n; ++pos) {
        element_id e = tie_priority[pos];
        if (e >= n || tie_pos[e] != n)
            throw input_error("order_from_values: tie priority is not a permutation");
        tie_pos[e] = pos;
    }
    std::vector<element_id> seq(n);
    for (element_id e = 0; e < n; ++e) seq[e] = e;
    std::sort(seq.begin(), seq.end(), [&](element_id a, element_id b) {
        if (values[a] != values[b]) return values[b] < values[a];
        return tie_pos[a] < tie_pos[b];
    });
    return strict_order::from_best_first(std::move(seq));
}

inline strict_order order_from_values(const std::vector<rational>& values) {
    std::vector<element_id> ids(values.size());
    for (element_id e = 0; e < values.size(); ++e) ids[e] = e;
    return order_from_values(values, ids);
}

// Greedy optimal base of the matroid restricted to restrict_to: scan in
// preference order, keep every element that preserves independence.  For a
// strict order this is the unique optimal base of the restriction.
template <independence_oracle M>
element_set optimal_base(const M& m, const strict_order& order, const element_set& restrict_to) {
    if (order.size() != m.ground_size())
        throw contract_error("optimal_base: order does not cover the ground set");
    if (restrict_to.universe() != m.ground_size())
        throw contract_error("optimal_base: restriction universe does not match");
    element_set picked(m.ground_size());
    for (element_id e : order.best_first()) {
        if (!restrict_to.contains(e)) continue;
        picked.add(e);
        if (!m.is_independent(picked)) picked.remove(e);
    }
    return picked;
}

template <independence_oracle M>
bool is_optimal_base(const M& m, const strict_order& order, const element_set& candidate) {
    return candidate == optimal_base(m, order, element_set::full(m.ground_size()));
}

using exchange_pairs = std::vector<std::pair<element_id, element_id>>;

// Bipartite exchange graph between the optimal base A and a disjoint base B:
// an edge (a, b) for every a in A, b in B with a preferred to b and b lying
// on the fundamental circuit of a with respect to B.  Optimality of A and
// the base/disjointness preconditions are validated.
template <independence_oracle M>
exchange_pairs exchange_graph(const M& m, const strict_order& order, const element_set& a_base,
                              const element_set& b_base) {
    if (!is_optimal_base(m, order, a_base))
        throw contract_error("exchange_graph: first argument is not the optimal base");
    if (a_base.intersects(b_base)) throw contract_error("exchange_graph: bases are not disjoint");
    if (!m.is_independent(b_base) || b_base.count() != a_base.count())
        throw contract_error("exchange_graph: second argument is not a base");
    exchange_pairs edges;
    a_base.for_each([&](element_id a) {
        auto circuit = fundamental_circuit(m, b_base, a);
        if (!circuit) throw invariant_error("exchange_graph: base admitted an extension");
        circuit->for_each([&](element_id b) {
            if (b != a && order.prefers(a, b)) edges.emplace_back(a, b);
        });
    });
    return edges;
}

struct exchange_matching {
    exchange_pairs pairs;
};

// Perfect matching in the exchange graph, via augmenting paths scanned in
// ascending id order.  Each matched pair (a, b) satisfies a preferred to b
// and B + a - b independent; a graph with no perfect matching contradicts
// the exchange theory, so that case throws invariant_error.
template <independence_oracle M>
exchange_matching perfect_exchange_matching(const M& m, const strict_order& order,
                                            const element_set& a_base,
                                            const element_set& b_base) {
    exchange_pairs edges = exchange_graph(m, order, a_base, b_base);
    std::vector<element_id> left = a_base.to_vector(), right = b_base.to_vector();
    std::vector<std::vector<std::size_t>> adjacency(left.size());
    for (const auto& [a, b] : edges) {
        auto ai = std::lower_bound(left.begin(), left.end(), a) - left.begin();
        auto bi = std::lower_bound(right.begin(), right.end(), b) - right.begin();
        adjacency[ai].push_back(static_cast<std::size_t>(bi));
    }
    constexpr std::size_t unmatched = static_cast<std::size_t>(-1);
    std::vector<std::size_t> match_of_right(right.size(), unmatched);
    std::vector<bool> visited;
    auto augment = [&](auto&& self, std::size_t ai) -> bool {
        for (std::size_t bi : adjacency[ai]) {
            if (visited[bi]) continue;
            visited[bi] = true;
            if (match_of_right[bi] == unmatched || self(self, match_of_right[bi])) {
                match_of_right[bi] = ai;
                return true;
            }
        }
        return false;
    };
    std::size_t matched = 0;
    for (std::size_t ai = 0; ai < left.size(); ++ai) {
        visited.assign(right.size(), false);
        if (augment(augment, ai)) ++matched;
    }
    if (matched != left.size())
        throw invariant_error("perfect_exchange_matching: no perfect matching in exchange graph");
    exchange_matching result;
    result.pairs.reserve(left.size());
    for (std::size_t bi = 0; bi < right.size(); ++bi)
        result.pairs.emplace_back(left[match_of_right[bi]], right[bi]);
    std::sort(result.pairs.begin(), result.pairs.end());
    return result;
}

// True when the order-worst element of circuit lies outside the optimal
// base.  Both the optimality of a_base and circuit minimality are validated.
template <independence_oracle M>
bool check_worst_circuit_element(const M& m, const strict_order& order, const element_set& a_base,
                                 const element_set& circuit) {
    if (!is_optimal_base(m, order, a_base))
        throw contract_error("check_worst_circuit_element: not the optimal base");
    if (m.is_independent(circuit))
        throw contract_error("check_worst_circuit_element: circuit is independent");
    bool minimal = true;
    circuit.for_each([&](element_id e) {
        if (!m.is_independent(circuit.without(e))) minimal = false;
    });
    if (!minimal) throw contract_error("check_worst_circuit_element: set is not a circuit");
    return !a_base.contains(order.worst_of(circuit));
}

} // namespace mkt
