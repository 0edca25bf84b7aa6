#pragma once

#include <cstdint>
#include <compare>
#include <ostream>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace mkt {

// Exact rational number with int64 numerator/denominator.  All arithmetic
// runs through 128-bit intermediates and renormalizes before narrowing, so
// results are exact or throw; nothing silently wraps.  Denominator > 0,
// gcd(num, den) == 1 always hold.
class rational {
  public:
    constexpr rational() = default;
    constexpr rational(std::int64_t value) : num_(value) {} // NOLINT: implicit by design
    rational(std::int64_t num, std::int64_t den) {
        if (den == 0) throw input_error("rational: zero denominator");
        *this = normalized(num, den);
    }

    [[nodiscard]] std::int64_t numerator() const { return num_; }
    [[nodiscard]] std::int64_t denominator() const { return den_; }
    [[nodiscard]] bool is_zero() const { return num_ == 0; }
    [[nodiscard]] bool is_integer() const { return den_ == 1; }

    friend rational operator+(const rational& a, const rational& b) {
        return normalized(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend rational operator-(const rational& a, const rational& b) {
        return normalized(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend rational operator*(const rational& a, const rational& b) {
        return normalized(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend rational operator/(const rational& a, const rational& b) {
        if (b.num_ == 0) throw input_error("rational: division by zero");
        return normalized(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    rational operator-() const {
        rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }
    rational& operator+=(const rational& b) { return *this = *this + b; }
    rational& operator-=(const rational& b) { return *this = *this - b; }
    rational& operator*=(const rational& b) { return *this = *this * b; }
    rational& operator/=(const rational& b) { return *this = *this / b; }

    friend bool operator==(const rational& a, const rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const rational& a, const rational& b) {
        return i128(a.num_) * b.den_ <=> i128(b.num_) * a.den_;
    }

    [[nodiscard]] std::string str() const {
        std::string s = std::to_string(num_);
        if (den_ != 1) s += "/" + std::to_string(den_);
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const rational& r) { return os << r.str(); }

    // Accepts "7", "-3", "3/2", "1.25".  Whole string must be consumed.
    static rational parse(std::string_view text);

  private:
    using i128 = __int128;

    static rational normalized(i128 num, i128 den) {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        i128 g = gcd128(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        constexpr i128 lo = INT64_MIN, hi = INT64_MAX;
        if (num < lo || num > hi || den > hi)
            throw input_error("rational: value exceeds 64-bit exact range");
        rational r;
        r.num_ = static_cast<std::int64_t>(num);
        r.den_ = static_cast<std::int64_t>(den);
        return r;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) {
            i128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

inline rational abs(const rational& r) { return r < rational(0) ? -r : r; }

inline rational min(const rational& a, const rational& b) { return b < a ? b : a; }
inline rational max(const rational& a, const rational& b) { return a < b ? b : a; }

inline rational rational::parse(std::string_view text) {
    auto fail = [&] { throw input_error("not a rational: '" + std::string(text) + "'"); };
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negative = text[pos] == '-';
        ++pos;
    }
    auto digits = [&](std::int64_t& out, std::size_t max_digits) {
        std::size_t start = pos;
        out = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            if (pos - start >= max_digits) fail();
            out = out * 10 + (text[pos] - '0');
            ++pos;
        }
        if (pos == start) fail();
    };
    std::int64_t whole = 0;
    digits(whole, 18);
    std::int64_t num = whole, den = 1;
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        digits(den, 18);
        if (den == 0) fail();
    } else if (pos < text.size() && text[pos] == '.') {
        ++pos;
        std::size_t start = pos;
        std::int64_t frac = 0;
        digits(frac, 15);
        for (std::size_t i = start; i < pos; ++i) den *= 10;
        num = whole * den + frac;
    }
    if (pos != text.size()) fail();
    return {negative ? -num : num, den};
}

} // namespace mkt
