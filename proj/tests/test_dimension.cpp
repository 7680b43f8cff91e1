#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "adic/blocks.hpp"
#include "adic/dimension.hpp"
#include "adic/epsilon_blocks.hpp"

#include <cmath>

using namespace adic;

namespace {

StochasticVector vec4(const char* a, const char* b, const char* c, const char* d) {
  return StochasticVector({Rational::parse(a), Rational::parse(b),
                           Rational::parse(c), Rational::parse(d)});
}

}  // namespace

TEST_CASE("entropy dimension formula") {
  CHECK(besicovitch_eggleston_dimension(vec4("1/4", "1/4", "1/4", "1/4")) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(besicovitch_eggleston_dimension(vec4("1", "0", "0", "0")) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(besicovitch_eggleston_dimension(vec4("1/2", "1/2", "0", "0")) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(besicovitch_eggleston_dimension(vec4("1/4", "1/4", "1/4", "1/4"), 3),
                  std::domain_error);
}

TEST_CASE("entropy dimension is permutation invariant and maximal at uniform") {
  SplitMix64 rng(5150);
  for (int trial = 0; trial < 100; ++trial) {
    std::int64_t den = 40;
    std::int64_t c1 = static_cast<std::int64_t>(rng.below(41));
    std::int64_t c2 = static_cast<std::int64_t>(rng.below(41));
    std::int64_t c3 = static_cast<std::int64_t>(rng.below(41));
    if (c1 > c2) std::swap(c1, c2);
    if (c2 > c3) std::swap(c2, c3);
    if (c1 > c2) std::swap(c1, c2);
    std::vector<Rational> e{Rational(c1, den), Rational(c2 - c1, den),
                            Rational(c3 - c2, den), Rational(den - c3, den)};
    const double d1 = besicovitch_eggleston_dimension(StochasticVector(e));
    std::swap(e[0], e[3]);
    std::swap(e[1], e[2]);
    const double d2 = besicovitch_eggleston_dimension(StochasticVector(e));
    CHECK(d1 == doctest::Approx(d2).epsilon(1e-12));
    CHECK(d1 <= 1.0 + 1e-12);
  }
}

TEST_CASE("cover alpha-volumes in exact log2 form") {
  // k=2, m=6 (t=3, j=0), alpha=1/4: log2 = 3 - 2*(1/4)*6 = 0.
  CHECK(cover_alpha_volume_log2({2}, 6, Rational(1, 4)) == Rational(0));
  // k=4, alpha=1/4, m=16 (t=4): log2 = 4 - 8 = -4.
  CHECK(cover_alpha_volume_log2({4}, 16, Rational(1, 4)) == Rational(-4));
  // At alpha = 1/(2k) every full-block rank has log2 volume zero.
  for (std::uint64_t k : {2ull, 4ull, 8ull, 16ull})
    for (std::uint64_t t = 1; t <= 50; ++t)
      CHECK(cover_alpha_volume_log2({k}, k * t,
                                    Rational(1, 2 * static_cast<std::int64_t>(k))) ==
            Rational(0));
}

TEST_CASE("within a block, rank kt-1 has the smallest volume") {
  const CylinderCoverSpec spec{8};
  const Rational alpha(1, 16);
  for (std::uint64_t t = 1; t <= 20; ++t)
    for (std::uint64_t j = 2; j < spec.k; ++j)
      CHECK(cover_alpha_volume_log2(spec, spec.k * t - 1, alpha) <
            cover_alpha_volume_log2(spec, spec.k * t - j, alpha));
}

TEST_CASE("crossover dimension and the volume dichotomy") {
  CHECK(crossover_dimension({8}) == Rational(1, 16));
  CHECK(crossover_dimension({2}) == Rational(1, 4));
  // Above the crossover the rank-kt log volumes strictly decrease, below
  // they strictly increase.
  SplitMix64 rng(31337);
  for (std::uint64_t k : {2ull, 4ull, 8ull, 16ull}) {
    const CylinderCoverSpec spec{k};
    const Rational alpha0(1, 2 * static_cast<std::int64_t>(k));
    for (int trial = 0; trial < 20; ++trial) {
      const Rational above =
          alpha0 + Rational(1 + static_cast<std::int64_t>(rng.below(1000)), 4000);
      const Rational below_num(1 + static_cast<std::int64_t>(
                                       rng.below(static_cast<std::uint64_t>(
                                           alpha0.num() * 4000 / alpha0.den()))),
                               4000);
      for (std::uint64_t t = 1; t < 50; ++t) {
        CHECK(cover_alpha_volume_log2(spec, k * (t + 1), above) <
              cover_alpha_volume_log2(spec, k * t, above));
        CHECK(cover_alpha_volume_log2(spec, k * (t + 1), below_num) >
              cover_alpha_volume_log2(spec, k * t, below_num));
      }
    }
  }
}

TEST_CASE("box counting: full coverage gives slope 1") {
  // All 4^5 prefixes of rank 5, padded to length 8.
  std::vector<std::string> points;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d)
          for (int e = 0; e < 4; ++e) {
            std::string p;
            p += static_cast<char>('0' + a);
            p += static_cast<char>('0' + b);
            p += static_cast<char>('0' + c);
            p += static_cast<char>('0' + d);
            p += static_cast<char>('0' + e);
            p += "000";
            points.push_back(p);
          }
  const auto est = box_counting_estimate(points, 5);
  CHECK(std::abs(est.value - 1.0) < 0.01);
  CHECK(est.counts[0] == 4);
  CHECK(est.counts[4] == 1024);
}

TEST_CASE("box counting matches the entropy formula on half-dimension samples") {
  // Seeded shuffles of blocks holding half zeros, half ones; first block is
  // 20 digits so every rank up to 8 sees the full combinatorics.
  const StochasticVector tau = vec4("1/2", "1/2", "0", "0");
  auto base = [&tau] {
    return block_number(constant_plan(tau, LengthSchedule::affine(1, 19)));
  };
  auto variant = [&](std::uint64_t i) {
    return permute_blocks(base, BlockPermutation::seeded(i + 1), /*fix_first=*/false);
  };
  const auto points = sample_variant_points(variant, 2000, 10);
  const auto est = box_counting_estimate(points, 8);
  CHECK(std::abs(est.value - 0.5) < 0.05);
}

TEST_CASE("box counting recovers the crossover dimension on marker samples") {
  // Two-branch blocks of length 4: dimension 1/(2k) = 1/8.
  const StochasticVector p = vec4("1/4", "1/2", "0", "1/4");
  EpsilonConfig cfg;
  cfg.k = 4;
  auto variant = [&](std::uint64_t i) {
    EpsilonConfig c = cfg;
    c.eps = EpsilonBits::seeded(i + 1);
    return epsilon_theta2_stream(p, p, Rational(5, 4), c);
  };
  const auto points = sample_variant_points(variant, 2000, 12);
  const auto est = box_counting_estimate(points, 10);
  CHECK(std::abs(est.value - 0.125) < 0.05);
}

TEST_CASE("box counting input validation") {
  CHECK_THROWS_AS(box_counting_estimate({"0123"}, 4), std::domain_error);
  CHECK_THROWS_AS(box_counting_estimate({"0123", "01"}, 4), std::domain_error);
  CHECK_THROWS_AS(box_counting_estimate({"0123", "0123"}, 1), std::domain_error);
  // Two points cannot support any usable rank.
  CHECK_THROWS_AS(box_counting_estimate({"00000000", "11111111"}, 8),
                  std::domain_error);
}

TEST_CASE("deepening the rank window never inflates the estimate") {
  const StochasticVector tau = vec4("1/2", "1/2", "0", "0");
  auto base = [&tau] {
    return block_number(constant_plan(tau, LengthSchedule::affine(1, 19)));
  };
  auto variant = [&](std::uint64_t i) {
    return permute_blocks(base, BlockPermutation::seeded(i + 100), false);
  };
  const auto points = sample_variant_points(variant, 500, 12);
  const auto shallow = box_counting_estimate(points, 6);
  const auto deep = box_counting_estimate(points, 12);
  CHECK(deep.value <= shallow.value + 0.02);
}
