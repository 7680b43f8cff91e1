#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "adic/rational.hpp"

#include <cstdint>

using adic::Rational;

TEST_CASE("construction normalizes sign and gcd") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, 4) == Rational(-1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(0, 7).num() == 0);
  CHECK(Rational(0, 7).den() == 1);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("arithmetic is exact") {
  CHECK(Rational(1, 2) + Rational(3, 2) == Rational(2));
  CHECK(Rational(1, 2) - Rational(3, 2) == Rational(-1));
  CHECK(Rational(1, 2) * Rational(3, 2) == Rational(3, 4));
  CHECK(Rational(1, 2) / Rational(3, 2) == Rational(1, 3));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("comparisons") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(2, 6) <= Rational(1, 3));
  CHECK(Rational(2, 6) >= Rational(1, 3));
  CHECK(adic::max(Rational(1, 3), Rational(1, 4)) == Rational(1, 3));
  CHECK(adic::min(Rational(1, 3), Rational(1, 4)) == Rational(1, 4));
  CHECK(adic::abs(Rational(-5, 7)) == Rational(5, 7));
}

TEST_CASE("floor and floor_scaled") {
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(4).floor() == 4);
  CHECK(adic::floor_scaled(Rational(3, 10), 10) == 3);
  CHECK(adic::floor_scaled(Rational(3, 10), 13) == 3);   // 3.9
  CHECK(adic::floor_scaled(Rational(3, 10), 14) == 4);   // 4.2
  CHECK(adic::floor_scaled(Rational(1, 3), 1000000) == 333333);
}

TEST_CASE("floor bracket telescoping: sum of differences collapses") {
  // sum_{i=1..j} (⌊p k (i+1)⌋ − ⌊p k i⌋) = ⌊p k (j+1)⌋ − ⌊p k⌋, any p, k, j.
  adic::SplitMix64 rng(20240817);
  for (int trial = 0; trial < 200; ++trial) {
    const Rational p(static_cast<std::int64_t>(rng.below(500)),
                     static_cast<std::int64_t>(1 + rng.below(499)));
    const std::uint64_t k = 1 + rng.below(100);
    const std::uint64_t j = 1 + rng.below(60);
    std::int64_t sum = 0;
    for (std::uint64_t i = 1; i <= j; ++i)
      sum += adic::floor_scaled(p, k * (i + 1)) - adic::floor_scaled(p, k * i);
    CHECK(sum == adic::floor_scaled(p, k * (j + 1)) - adic::floor_scaled(p, k));
  }
}

TEST_CASE("randomized field identities") {
  adic::SplitMix64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const Rational a(static_cast<std::int64_t>(rng.below(2001)) - 1000,
                     static_cast<std::int64_t>(1 + rng.below(60)));
    const Rational b(static_cast<std::int64_t>(rng.below(2001)) - 1000,
                     static_cast<std::int64_t>(1 + rng.below(60)));
    CHECK(a + b - b == a);
    CHECK((a - b) + b == a);
    if (!b.is_zero()) CHECK((a / b) * b == a);
    CHECK(a * b == b * a);
  }
}

TEST_CASE("parse") {
  CHECK(Rational::parse("8/5") == Rational(8, 5));
  CHECK(Rational::parse("-1/3") == Rational(-1, 3));
  CHECK(Rational::parse("27/100") == Rational(27, 100));
  CHECK(Rational::parse("4") == Rational(4));
  CHECK(Rational::parse(" 3/2 ") == Rational(3, 2));
  CHECK_THROWS_AS(Rational::parse("1/0"), adic::SpecError);
  CHECK_THROWS_AS(Rational::parse("x"), adic::SpecError);
  CHECK_THROWS_AS(Rational::parse("1/2/3"), adic::SpecError);
  CHECK_THROWS_AS(Rational::parse(""), adic::SpecError);
}

TEST_CASE("str round trips") {
  CHECK(Rational(3, 4).str() == "3/4");
  CHECK(Rational(5).str() == "5");
  CHECK(Rational(-1, 3).str() == "-1/3");
  adic::SplitMix64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const Rational a(static_cast<std::int64_t>(rng.below(10000)) - 5000,
                     static_cast<std::int64_t>(1 + rng.below(997)));
    CHECK(Rational::parse(a.str()) == a);
  }
}

TEST_CASE("decimal renders 12 significant digits") {
  CHECK(Rational(1, 3).decimal() == "0.333333333333");
  CHECK(Rational(3, 2).decimal() == "1.50000000000");
  CHECK(Rational(1, 4).decimal() == "0.250000000000");
  CHECK(Rational(1).decimal() == "1.00000000000");
  CHECK(Rational(0).decimal() == "0.000000000000");
  CHECK(Rational(1, 20).decimal() == "0.0500000000000");
  CHECK(Rational(2, 3).decimal() == "0.666666666667");
  CHECK(Rational(1, 7).decimal() == "0.142857142857");
  CHECK(Rational(2999, 1000).decimal() == "2.99900000000");
  CHECK(Rational(-1, 3).decimal() == "-0.333333333333");
  CHECK(Rational(999999999999, 1000000000000).decimal() == "0.999999999999");
  // Carry across the leading digit.
  CHECK(Rational(9999999999999, 10000000000000).decimal() == "1.00000000000");
}

TEST_CASE("overflow is detected, not wrapped") {
  const std::int64_t big = std::int64_t{1} << 62;
  const Rational a(big, 1);
  CHECK_THROWS_AS(a * a, adic::RationalOverflow);
}
