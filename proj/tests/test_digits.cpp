#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "adic/digits.hpp"
#include "adic/stream_io.hpp"

#include <cstdio>
#include <filesystem>

using namespace adic;

TEST_CASE("digits_of_rational canonical expansions") {
  CHECK(digits_of_rational(0, 1, kBase4, 5) == std::vector<int>{0, 0, 0, 0, 0});
  // 1/4 is 4-adic rational: canonical form is 1,(0), never 0,(3).
  CHECK(digits_of_rational(1, 4, kBase4, 4) == std::vector<int>{1, 0, 0, 0});
  CHECK(digits_of_rational(1, 3, kBase4, 4) == std::vector<int>{1, 1, 1, 1});
  CHECK(digits_of_rational(1, 2, kBase4, 3) == std::vector<int>{2, 0, 0});
  CHECK(digits_of_rational(5, 16, kBase4, 5) == std::vector<int>{1, 1, 0, 0, 0});
  // Base 10 sanity.
  CHECK(digits_of_rational(1, 8, Alphabet(10), 4) == std::vector<int>{1, 2, 5, 0});
}

TEST_CASE("digits_of_rational domain errors") {
  CHECK_THROWS_AS(digits_of_rational(1, 0, kBase4, 3), std::domain_error);
  CHECK_THROWS_AS(digits_of_rational(5, 4, kBase4, 3), std::domain_error);
  CHECK_THROWS_AS(digits_of_rational(4, 4, kBase4, 3), std::domain_error);  // x = 1 rejected
  CHECK_THROWS_AS(digits_of_rational(-1, 4, kBase4, 3), std::domain_error);
}

TEST_CASE("terminating expansions end in period (0), never (s-1)") {
  // Denominator a power of 4 means the expansion terminates; the canonical
  // representation continues with zeros.
  for (std::int64_t num = 0; num < 256; ++num) {
    auto digits = digits_of_rational(num, 256, kBase4, 12);
    for (std::size_t i = 4; i < digits.size(); ++i) CHECK(digits[i] == 0);
  }
}

TEST_CASE("advance accumulates prefix statistics") {
  DigitStream s = periodic_stream({0, 1, 2, 3});
  auto digits = s.advance(4);
  CHECK(digits == std::vector<int>{0, 1, 2, 3});
  CHECK(s.stats().counts == std::vector<std::uint64_t>{1, 1, 1, 1});
  CHECK(s.stats().digit_sum == 6);

  DigitStream threes = periodic_stream({3});
  threes.skip(10);
  CHECK(threes.stats().counts == std::vector<std::uint64_t>{0, 0, 0, 10});
  CHECK(threes.stats().digit_sum == 30);

  DigitStream zeroones = periodic_stream({0, 1});
  zeroones.skip(6);
  CHECK(zeroones.stats().counts == std::vector<std::uint64_t>{3, 3, 0, 0});
  CHECK(zeroones.stats().digit_sum == 3);
  CHECK(relative_frequency(zeroones.stats(), 0) == Rational(1, 2));
  CHECK(relative_mean(zeroones.stats()) == Rational(1, 2));
}

TEST_CASE("relative frequency and mean") {
  PrefixStats st(4);
  CHECK_THROWS_AS(relative_frequency(st, 0), std::domain_error);
  CHECK_THROWS_AS(relative_mean(st), std::domain_error);
  st.push(0);
  st.push(1);
  st.push(2);
  st.push(3);
  CHECK(relative_frequency(st, 2) == Rational(1, 4));
  CHECK(relative_mean(st) == Rational(3, 2));
  CHECK_THROWS_AS(relative_frequency(st, 4), std::domain_error);
}

TEST_CASE("prefix identities hold exactly on random streams") {
  // Σ v_i = 1 and r_n = v_1 + 2 v_2 + 3 v_3 at every prefix, plus the
  // squeeze bounds v_i <= r_n (i>=1) and v_i <= 3 - r_n (i<=2).
  SplitMix64 rng(1234);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> pattern;
    const std::size_t len = 1 + rng.below(12);
    for (std::size_t i = 0; i < len; ++i)
      pattern.push_back(static_cast<int>(rng.below(4)));
    DigitStream s = periodic_stream(pattern);
    for (int step = 0; step < 50; ++step) {
      s.skip(1 + rng.below(40));
      const auto& st = s.stats();
      Rational sum = 0, mean_rhs = 0;
      for (int d = 0; d < 4; ++d) {
        const Rational v = relative_frequency(st, d);
        sum += v;
        mean_rhs += Rational(d) * v;
      }
      const Rational r = relative_mean(st);
      REQUIRE(sum == Rational(1));
      REQUIRE(r == mean_rhs);
      for (int d = 1; d <= 3; ++d) REQUIRE(relative_frequency(st, d) <= r);
      for (int d = 0; d <= 2; ++d) REQUIRE(relative_frequency(st, d) <= Rational(3) - r);
    }
  }
}

TEST_CASE("streams are deterministic under re-instantiation") {
  auto factory = [] { return rational_stream(355, 1130, kBase4); };
  DigitStream a = factory();
  DigitStream b = factory();
  CHECK(a.advance(5000) == b.advance(5000));
  CHECK(a.stats().counts == b.stats().counts);
}

TEST_CASE("literal streams are finite") {
  DigitStream s = literal_stream({1, 2, 3});
  s.skip(3);
  CHECK_THROWS_AS(s.next(), std::out_of_range);
}

TEST_CASE("ascii round trip and errors") {
  CHECK(to_ascii({0, 1, 2, 3}) == "0123");
  CHECK(parse_ascii("0123\n", 4) == std::vector<int>{0, 1, 2, 3});
  CHECK(parse_ascii("", 4).empty());
  CHECK_THROWS_WITH_AS(parse_ascii("0143", 4), "bad digit character at byte offset 2",
                       SpecError);
  CHECK_THROWS_WITH_AS(parse_ascii("01\n3", 4), "bad digit character at byte offset 3",
                       SpecError);
  CHECK(parse_ascii("019", 10) == std::vector<int>{0, 1, 9});
}

TEST_CASE("packed format round trips at awkward lengths") {
  SplitMix64 rng(55);
  for (std::size_t len : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 17u, 1000u}) {
    std::vector<int> digits;
    for (std::size_t i = 0; i < len; ++i)
      digits.push_back(static_cast<int>(rng.below(4)));
    CHECK(unpack_digits(pack_digits(digits, 4)) == digits);
  }
  CHECK_THROWS_AS(unpack_digits("AD"), SpecError);
  CHECK_THROWS_AS(unpack_digits("XXXX0123456789ab"), SpecError);
  CHECK_THROWS_AS(pack_digits({0, 1}, 10), SpecError);
}

TEST_CASE("file io") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "adic_test_io";
  fs::create_directories(dir);
  const std::string ascii_path = (dir / "digits.txt").string();
  const std::string packed_path = (dir / "digits.bin").string();

  DigitStream s = periodic_stream({0, 1, 2, 3});
  write_ascii_file(ascii_path, s, 8);
  CHECK(read_ascii_file(ascii_path, 4) == std::vector<int>{0, 1, 2, 3, 0, 1, 2, 3});

  DigitStream t = periodic_stream({3, 2});
  write_packed_file(packed_path, t, 5);
  CHECK(read_packed_file(packed_path) == std::vector<int>{3, 2, 3, 2, 3});
  CHECK(read_stream_file(packed_path, 4) == std::vector<int>{3, 2, 3, 2, 3});
  CHECK(read_stream_file(ascii_path, 4).size() == 8);

  fs::remove_all(dir);
}
