#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "errors.hpp"

namespace mkt {

// Ground-set elements are dense ids 0..n-1.
using element_id = std::size_t;

// Subset of a fixed ground set, stored as packed 64-bit words.  A set knows
// its universe size; combining sets from different universes is a contract
// violation.  Works unchanged for universes past 64 elements (extended
// ground sets routinely are).
class element_set {
  public:
    element_set() = default;
    explicit element_set(std::size_t universe)
        : universe_(universe), words_((universe + 63) / 64, 0) {}

    element_set(std::size_t universe, std::initializer_list<element_id> ids)
        : element_set(universe) {
        for (element_id e : ids) add(e);
    }

    static element_set full(std::size_t universe) {
        element_set s(universe);
        for (auto& w : s.words_) w = ~std::uint64_t{0};
        s.trim();
        return s;
    }

    [[nodiscard]] std::size_t universe() const { return universe_; }
    [[nodiscard]] bool empty() const {
        for (auto w : words_)
            if (w != 0) return false;
        return true;
    }
    [[nodiscard]] std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    [[nodiscard]] bool contains(element_id e) const {
        check_element(e);
        return (words_[e / 64] >> (e % 64)) & 1u;
    }
    void add(element_id e) {
        check_element(e);
        words_[e / 64] |= std::uint64_t{1} << (e % 64);
    }
    void remove(element_id e) {
        check_element(e);
        words_[e / 64] &= ~(std::uint64_t{1} << (e % 64));
    }
    [[nodiscard]] element_set with(element_id e) const {
        element_set r = *this;
        r.add(e);
        return r;
    }
    [[nodiscard]] element_set without(element_id e) const {
        element_set r = *this;
        r.remove(e);
        return r;
    }

    friend element_set operator|(element_set a, const element_set& b) {
        a.check_universe(b);
        for (std::size_t i = 0; i < a.words_.size(); ++i) a.words_[i] |= b.words_[i];
        return a;
    }
    friend element_set operator&(element_set a, const element_set& b) {
        a.check_universe(b);
        for (std::size_t i = 0; i < a.words_.size(); ++i) a.words_[i] &= b.words_[i];
        return a;
    }
    friend element_set operator-(element_set a, const element_set& b) {
        a.check_universe(b);
        for (std::size_t i = 0; i < a.words_.size(); ++i) a.words_[i] &= ~b.words_[i];
        return a;
    }
    friend bool operator==(const element_set& a, const element_set& b) {
        return a.universe_ == b.universe_ && a.words_ == b.words_;
    }

    [[nodiscard]] bool subset_of(const element_set& other) const {
        check_universe(other);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }
    [[nodiscard]] bool intersects(const element_set& other) const {
        check_universe(other);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & other.words_[i]) return true;
        return false;
    }
    [[nodiscard]] std::size_t intersection_count(const element_set& other) const {
        check_universe(other);
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
        return c;
    }

    // Visits members in ascending id order.
    template <typename Fn> void for_each(Fn&& fn) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w != 0) {
                auto bit = static_cast<std::size_t>(std::countr_zero(w));
                fn(static_cast<element_id>(i * 64 + bit));
                w &= w - 1;
            }
        }
    }

    [[nodiscard]] std::vector<element_id> to_vector() const {
        std::vector<element_id> v;
        v.reserve(count());
        for_each([&](element_id e) { v.push_back(e); });
        return v;
    }

    // Low 64 bits; only meaningful for universes of at most 64 elements.
    [[nodiscard]] std::uint64_t low_word() const { return words_.empty() ? 0 : words_[0]; }

    static element_set from_mask(std::size_t universe, std::uint64_t mask) {
        if (universe > 64) throw contract_error("element_set: mask form limited to 64 elements");
        element_set s(universe);
        if (universe != 0) s.words_[0] = mask;
        s.trim();
        if (s.words_.empty() ? mask != 0 : s.words_[0] != mask)
            throw contract_error("element_set: mask has bits outside the universe");
        return s;
    }

    [[nodiscard]] std::string str() const {
        std::string s = "{";
        bool first = true;
        for_each([&](element_id e) {
            if (!first) s += ",";
            first = false;
            s += std::to_string(e);
        });
        return s + "}";
    }

  private:
    void check_element(element_id e) const {
        if (e >= universe_)
            throw input_error("element id " + std::to_string(e) + " outside universe of size " +
                              std::to_string(universe_));
    }
    void check_universe(const element_set& other) const {
        if (universe_ != other.universe_)
            throw contract_error("element_set: mixed universes (" + std::to_string(universe_) +
                                 " vs " + std::to_string(other.universe_) + ")");
    }
    void trim() {
        if (universe_ % 64 != 0 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
    }

    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace mkt
