#include <catch2/catch_amalgamated.hpp>

#include "mkt/rational.hpp"

using mkt::input_error;
using mkt::rational;

TEST_CASE("construction normalizes sign and gcd", "[rational]") {
    CHECK(rational(6, 4) == rational(3, 2));
    CHECK(rational(-6, 4) == rational(-3, 2));
    CHECK(rational(6, -4) == rational(-3, 2));
    CHECK(rational(-6, -4) == rational(3, 2));
    CHECK(rational(0, 7) == rational(0));
    CHECK(rational(0, 7).denominator() == 1);
    CHECK(rational(3, 2).numerator() == 3);
    CHECK(rational(3, 2).denominator() == 2);
    CHECK(rational(5).is_integer());
    CHECK(!rational(1, 2).is_integer());
    CHECK(rational(0).is_zero());
    CHECK_THROWS_AS(rational(1, 0), input_error);
}

TEST_CASE("exact arithmetic", "[rational]") {
    CHECK(rational(1, 2) + rational(1, 3) == rational(5, 6));
    CHECK(rational(1, 2) - rational(1, 3) == rational(1, 6));
    CHECK(rational(1, 2) * rational(2, 3) == rational(1, 3));
    CHECK(rational(3, 2) / rational(3, 4) == rational(2));
    CHECK(-rational(3, 2) == rational(-3, 2));
    CHECK_THROWS_AS(rational(1) / rational(0), input_error);

    rational r(1, 6);
    r += rational(1, 3);
    CHECK(r == rational(1, 2));
    r *= rational(4);
    CHECK(r == rational(2));
    r -= rational(1, 2);
    CHECK(r == rational(3, 2));
    r /= rational(3);
    CHECK(r == rational(1, 2));
}

TEST_CASE("total order by cross multiplication", "[rational]") {
    CHECK(rational(1, 3) < rational(1, 2));
    CHECK(rational(1, 2) < rational(2, 3));
    CHECK(rational(-1, 2) < rational(0));
    CHECK(rational(-2, 3) < rational(-1, 2));
    CHECK(rational(7, 1) <= rational(7));
    CHECK(rational(3, 2) > rational(1));
    CHECK(mkt::min(rational(1, 3), rational(1, 2)) == rational(1, 3));
    CHECK(mkt::max(rational(1, 3), rational(1, 2)) == rational(1, 2));
    CHECK(mkt::abs(rational(-3, 2)) == rational(3, 2));
    CHECK(mkt::abs(rational(3, 2)) == rational(3, 2));
}

TEST_CASE("parse accepts integers, fractions and decimals", "[rational]") {
    CHECK(rational::parse("7") == rational(7));
    CHECK(rational::parse("-3") == rational(-3));
    CHECK(rational::parse("+2") == rational(2));
    CHECK(rational::parse("3/2") == rational(3, 2));
    CHECK(rational::parse("-4/6") == rational(-2, 3));
    CHECK(rational::parse("1.25") == rational(5, 4));
    CHECK(rational::parse("0.5") == rational(1, 2));
    CHECK(rational::parse("2.0") == rational(2));
}

TEST_CASE("parse rejects malformed text", "[rational]") {
    for (const char* bad : {"", "abc", "1x", "1//2", "1/", "/2", "1/0", ".5", "1.", "1.2.3",
                            "1 /2", "--3", "0x10"})
        CHECK_THROWS_AS(rational::parse(bad), input_error);
}

TEST_CASE("values outside the 64-bit exact range are refused", "[rational]") {
    const rational huge(std::int64_t{1} << 62);
    CHECK_THROWS_AS(huge * rational(4), input_error);
    CHECK_THROWS_AS(huge + huge, input_error);
    // __int128 intermediates keep in-range results exact even when the
    // cross products are large.
    const rational a(std::int64_t{1} << 40, 3), b(std::int64_t{1} << 40, 5);
    CHECK((a - b) == rational((std::int64_t{1} << 40) * 2, 15));
}

TEST_CASE("str prints canonical form", "[rational]") {
    CHECK(rational(3, 2).str() == "3/2");
    CHECK(rational(-1, 2).str() == "-1/2");
    CHECK(rational(7).str() == "7");
    CHECK(rational(0).str() == "0");
    CHECK(rational(4, 2).str() == "2");
}

TEST_CASE("parse round-trips str", "[rational]") {
    for (std::int64_t num = -8; num <= 8; ++num)
        for (std::int64_t den = 1; den <= 6; ++den) {
            rational r(num, den);
            CHECK(rational::parse(r.str()) == r);
        }
}
