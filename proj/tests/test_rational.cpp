#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "pathvote/rational.hpp"

using pathvote::Rational;

TEST_CASE("construction reduces and normalizes the sign") {
    CHECK(Rational(6, 4) == Rational(3, 2));
    CHECK(Rational(-6, 4) == Rational(-3, 2));
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(-6, -4) == Rational(3, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(5) == Rational(5, 1));
    CHECK(Rational(3, 2).den() > 0);
    CHECK(Rational(3, -2).den() > 0);
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("arithmetic on small fractions is exact") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
    CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
    CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
    CHECK(-Rational(1, 2) == Rational(-1, 2));
    CHECK(Rational(1, 2) + Rational(-1, 2) == Rational(0));
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);

    // The shape tallies take: sums of unit fractions from equal splits.
    Rational tally;
    tally += Rational(1, 3);
    tally += Rational(1, 3);
    tally += Rational(1, 3);
    CHECK(tally == Rational(1));

    Rational mixed = Rational(1, 2) + Rational(1, 6) + Rational(1, 3);
    CHECK(mixed == Rational(1));
}

TEST_CASE("comparison is a strict total order on exact values") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(2, 7) < Rational(1, 3));   // continued fractions [0;3,2] vs [0;3]
    CHECK(Rational(7, 5) < Rational(10, 7));  // [1;2,2] vs [1;2,3]
    CHECK(Rational(3, 2) <= Rational(3, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3)); // magnitude order flips for negatives
    CHECK(Rational(-10, 7) < Rational(-7, 5));
    CHECK(Rational(-1) < Rational(0));
    CHECK(Rational(0) < Rational(1, 1000000));
    CHECK(Rational(5, 3) > Rational(3, 2));
}

TEST_CASE("comparison agrees with cross multiplication on random fractions") {
    std::mt19937_64 rng(20240817);
    std::uniform_int_distribution<std::int64_t> num(-200, 200);
    std::uniform_int_distribution<std::int64_t> den(1, 200);
    for (int i = 0; i < 2000; ++i) {
        const std::int64_t a = num(rng), b = den(rng), c = num(rng), d = den(rng);
        const Rational x(a, b), y(c, d);
        // Oracle: a/b <=> c/d iff a*d <=> c*b (denominators positive).
        const __int128 lhs = __int128(a) * d, rhs = __int128(c) * b;
        CHECK((x < y) == (lhs < rhs));
        CHECK((x == y) == (lhs == rhs));
        CHECK((x > y) == (lhs > rhs));
    }
}

TEST_CASE("str prints the canonical p or p/q form") {
    CHECK(Rational(3, 2).str() == "3/2");
    CHECK(Rational(-3, 2).str() == "-3/2");
    CHECK(Rational(4, 2).str() == "2");
    CHECK(Rational(0, 5).str() == "0");
    CHECK(Rational(-7).str() == "-7");
}

TEST_CASE("to_double matches the quotient") {
    CHECK(Rational(1, 2).to_double() == doctest::Approx(0.5));
    CHECK(Rational(-5, 4).to_double() == doctest::Approx(-1.25));
}

TEST_CASE("overflow throws instead of wrapping") {
    const Rational big(std::int64_t(1) << 62);
    const Rational sq = big * big;  // 2^124, still representable
    CHECK(sq == sq);
    CHECK_THROWS_AS(sq * Rational(16), std::overflow_error);

    // Additions whose common denominator outgrows 128 bits.
    const std::int64_t d1 = (std::int64_t(1) << 62) - 1;
    const std::int64_t d2 = (std::int64_t(1) << 62) + 1;  // coprime with d1
    Rational sum = Rational(1, d1) + Rational(1, d2);     // denominator ~2^124
    CHECK_THROWS_AS(sum + Rational(1, 101), std::overflow_error);
}

TEST_CASE("equal-split sums over many electors stay exact") {
    // One vote split over k tied candidates, accumulated for k = 1..31 the
    // way election rounds do; the grand total must be exactly 31 votes.
    Rational total;
    for (int k = 1; k <= 31; ++k) {
        for (int copy = 0; copy < k; ++copy) total += Rational(1, k);
    }
    CHECK(total == Rational(31));
}
