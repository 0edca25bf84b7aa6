#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "element_set.hpp"
#include "errors.hpp"

namespace mkt {

// Anything exposing an independence oracle over a dense ground set.  The
// oracle is the single source of truth: rank, circuits, greedy bases and
// everything above them are derived generically from it, so a new matroid
// family plugs in by implementing this one predicate.
template <typename M>
concept independence_oracle = requires(const M& m, const element_set& x) {
    { m.ground_size() } -> std::convertible_to<std::size_t>;
    { m.is_independent(x) } -> std::convertible_to<bool>;
};

// Immutable matroid over ground set {0..n-1}, one of five concrete families:
//
//   uniform(n, r)          independent iff |X| <= r
//   partition(classes)     disjoint classes covering the ground set, each
//                          with a capacity; independent iff every class
//                          capacity is respected
//   graphic(V, edges)      element i is edge i of a multigraph on V
//                          vertices; independent iff the edges form a forest
//   laminar(sets)          capacitated family with any two sets nested or
//                          disjoint
//   explicit family        the independent sets listed outright (ground
//                          size capped at 16)
//
// Factories validate structure (ranges, disjointness, laminarity, downward
// closure).  Full matroid-axiom verification for explicit families is the
// separate verify_matroid_axioms below.
class matroid {
  public:
    enum class kind_t { uniform, partition, graphic, laminar, explicit_sets };

    static matroid uniform(std::size_t n, std::size_t rank) {
        matroid m(kind_t::uniform, n);
        if (rank > n) throw input_error("uniform matroid: rank exceeds ground size");
        m.rank_limit_ = rank;
        return m;
    }

    static matroid partition(std::size_t n, std::vector<element_set> classes,
                             std::vector<std::size_t> capacities) {
        matroid m(kind_t::partition, n);
        m.adopt_groups(std::move(classes), std::move(capacities));
        element_set seen(n);
        for (const auto& cls : m.groups_) {
            if (cls.intersects(seen)) throw input_error("partition matroid: classes overlap");
            seen = seen | cls;
        }
        if (!(seen == element_set::full(n)))
            throw input_error("partition matroid: classes do not cover the ground set");
        return m;
    }

    static matroid graphic(std::size_t vertex_count,
                           std::vector<std::pair<std::size_t, std::size_t>> edges) {
        matroid m(kind_t::graphic, edges.size());
        for (const auto& [a, b] : edges)
            if (a >= vertex_count || b >= vertex_count)
                throw input_error("graphic matroid: edge endpoint outside vertex range");
        m.vertex_count_ = vertex_count;
        m.edges_ = std::move(edges);
        return m;
    }

    static matroid laminar(std::size_t n, std::vector<element_set> sets,
                           std::vector<std::size_t> capacities) {
        matroid m(kind_t::laminar, n);
        m.adopt_groups(std::move(sets), std::move(capacities));
        for (std::size_t i = 0; i < m.groups_.size(); ++i)
            for (std::size_t j = i + 1; j < m.groups_.size(); ++j) {
                const auto &a = m.groups_[i], &b = m.groups_[j];
                if (a.intersects(b) && !a.subset_of(b) && !b.subset_of(a))
                    throw input_error("laminar matroid: sets neither nested nor disjoint");
            }
        return m;
    }

    static matroid from_independent_sets(std::size_t n, const std::vector<element_set>& family) {
        if (n > 16) throw input_error("explicit matroid: ground set larger than 16");
        matroid m(kind_t::explicit_sets, n);
        m.family_.reserve(family.size());
        for (const auto& s : family) {
            if (s.universe() != n)
                throw input_error("explicit matroid: set universe does not match ground size");
            m.family_.push_back(s.low_word());
        }
        std::sort(m.family_.begin(), m.family_.end());
        m.family_.erase(std::unique(m.family_.begin(), m.family_.end()), m.family_.end());
        if (m.family_.empty()) throw input_error("explicit matroid: family is empty");
        for (std::uint64_t mask : m.family_)
            for (std::size_t e = 0; e < n; ++e)
                if ((mask >> e) & 1u)
                    if (!m.family_contains(mask & ~(std::uint64_t{1} << e)))
                        throw input_error("explicit matroid: family not downward closed");
        return m;
    }

    [[nodiscard]] std::size_t ground_size() const { return n_; }
    [[nodiscard]] kind_t kind() const { return kind_; }

    [[nodiscard]] bool is_independent(const element_set& x) const {
        if (x.universe() != n_)
            throw input_error("is_independent: set universe does not match ground size");
        switch (kind_) {
        case kind_t::uniform:
            return x.count() <= rank_limit_;
        case kind_t::partition:
        case kind_t::laminar:
            for (std::size_t i = 0; i < groups_.size(); ++i)
                if (x.intersection_count(groups_[i]) > capacities_[i]) return false;
            return true;
        case kind_t::graphic:
            return forms_forest(x);
        case kind_t::explicit_sets:
            return family_contains(x.low_word());
        }
        throw invariant_error("is_independent: unknown matroid kind");
    }

    // Descriptive accessors used by serialization and diagnostics.
    [[nodiscard]] std::size_t uniform_rank() const { return rank_limit_; }
    [[nodiscard]] const std::vector<element_set>& groups() const { return groups_; }
    [[nodiscard]] const std::vector<std::size_t>& capacities() const { return capacities_; }
    [[nodiscard]] std::size_t vertex_count() const { return vertex_count_; }
    [[nodiscard]] const std::vector<std::pair<std::size_t, std::size_t>>& edges() const {
        return edges_;
    }
    [[nodiscard]] std::vector<element_set> independent_family() const {
        std::vector<element_set> out;
        out.reserve(family_.size());
        for (std::uint64_t mask : family_) out.push_back(element_set::from_mask(n_, mask));
        return out;
    }

    friend bool operator==(const matroid& a, const matroid& b) = default;

  private:
    matroid(kind_t kind, std::size_t n) : kind_(kind), n_(n) {}

    void adopt_groups(std::vector<element_set> groups, std::vector<std::size_t> capacities) {
        if (groups.size() != capacities.size())
            throw input_error("matroid: one capacity required per class");
        for (const auto& g : groups)
            if (g.universe() != n_)
                throw input_error("matroid: class universe does not match ground size");
        groups_ = std::move(groups);
        capacities_ = std::move(capacities);
    }

    [[nodiscard]] bool family_contains(std::uint64_t mask) const {
        return std::binary_search(family_.begin(), family_.end(), mask);
    }

    [[nodiscard]] bool forms_forest(const element_set& x) const {
        std::vector<std::size_t> parent(vertex_count_);
        std::iota(parent.begin(), parent.end(), std::size_t{0});
        auto find = [&](std::size_t v) {
            while (parent[v] != v) {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            return v;
        };
        bool acyclic = true;
        x.for_each([&](element_id e) {
            if (!acyclic) return;
            std::size_t ra = find(edges_[e].first), rb = find(edges_[e].second);
            if (ra == rb)
                acyclic = false;
            else
                parent[ra] = rb;
        });
        return acyclic;
    }

    kind_t kind_;
    std::size_t n_;
    std::size_t rank_limit_ = 0;
    std::vector<element_set> groups_;
    std::vector<std::size_t> capacities_;
    std::size_t vertex_count_ = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;
    std::vector<std::uint64_t> family_;
};

// Rank of x: size of a maximal independent subset, grown greedily in
// ascending id order.  Exchange property of matroids makes any greedy
// maximal subset maximum.
template <independence_oracle M>
std::size_t rank_of(const M& m, const element_set& x) {
    element_set picked(x.universe());
    std::size_t rank = 0;
    x.for_each([&](element_id e) {
        picked.add(e);
        if (m.is_independent(picked))
            ++rank;
        else
            picked.remove(e);
    });
    return rank;
}

// Elements whose addition to x does not raise its rank (always includes x).
template <independence_oracle M>
element_set closure_of(const M& m, const element_set& x) {
    element_set result = x;
    std::size_t base_rank = rank_of(m, x);
    for (element_id e = 0; e < x.universe(); ++e) {
        if (x.contains(e)) continue;
        if (rank_of(m, x.with(e)) == base_rank) result.add(e);
    }
    return result;
}

// Fundamental circuit of x with respect to independent I: the unique circuit
// inside I + x, or nullopt when I + x is itself independent.  It consists of
// x plus every y in I whose removal restores independence.
template <independence_oracle M>
std::optional<element_set> fundamental_circuit(const M& m, const element_set& independent,
                                               element_id x) {
    if (!m.is_independent(independent))
        throw contract_error("fundamental_circuit: reference set is dependent");
    if (independent.contains(x))
        throw contract_error("fundamental_circuit: element already in the set");
    element_set grown = independent.with(x);
    if (m.is_independent(grown)) return std::nullopt;
    element_set circuit(independent.universe());
    circuit.add(x);
    independent.for_each([&](element_id y) {
        if (m.is_independent(grown.without(y))) circuit.add(y);
    });
    return circuit;
}

// Checks that an explicitly listed family is a matroid: nonempty, downward
// closed, and satisfying the independence exchange axiom.  Exhaustive, so
// the ground set is capped at 16 elements.
inline bool verify_matroid_axioms(std::size_t n, const std::vector<element_set>& family) {
    if (n > 16) throw input_error("verify_matroid_axioms: ground set larger than 16");
    std::vector<std::uint64_t> masks;
    masks.reserve(family.size());
    for (const auto& s : family) {
        if (s.universe() != n)
            throw input_error("verify_matroid_axioms: set universe does not match ground size");
        masks.push_back(s.low_word());
    }
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    if (masks.empty()) return false;
    auto member = [&](std::uint64_t m) {
        return std::binary_search(masks.begin(), masks.end(), m);
    };
    for (std::uint64_t m : masks)
        for (std::size_t e = 0; e < n; ++e)
            if ((m >> e) & 1u)
                if (!member(m & ~(std::uint64_t{1} << e))) return false;
    for (std::uint64_t a : masks)
        for (std::uint64_t b : masks) {
            if (std::popcount(a) >= std::popcount(b)) continue;
            bool extended = false;
            std::uint64_t candidates = b & ~a;
            while (candidates != 0 && !extended) {
                std::uint64_t bit = candidates & (~candidates + 1);
                if (member(a | bit)) extended = true;
                candidates &= candidates - 1;
            }
            if (!extended) return false;
        }
    return true;
}

} // namespace mkt
