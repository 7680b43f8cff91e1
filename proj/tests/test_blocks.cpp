#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "adic/blocks.hpp"
#include "adic/oscillator.hpp"
#include "adic/stochastic.hpp"
#include "adic/witnesses.hpp"

using namespace adic;

namespace {

StochasticVector vec4(const char* a, const char* b, const char* c, const char* d) {
  return StochasticVector({Rational::parse(a), Rational::parse(b),
                           Rational::parse(c), Rational::parse(d)});
}

// Draws a random stochastic vector with denominator `den` via sorted cuts.
StochasticVector random_vector(SplitMix64& rng, std::int64_t den) {
  std::int64_t c1 = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(den) + 1));
  std::int64_t c2 = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(den) + 1));
  std::int64_t c3 = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(den) + 1));
  if (c1 > c2) std::swap(c1, c2);
  if (c2 > c3) std::swap(c2, c3);
  if (c1 > c2) std::swap(c1, c2);
  return StochasticVector({Rational(c1, den), Rational(c2 - c1, den),
                           Rational(c3 - c2, den), Rational(den - c3, den)});
}

}  // namespace

TEST_CASE("stochastic vector validation") {
  CHECK_NOTHROW(vec4("1/4", "1/4", "1/4", "1/4"));
  CHECK_THROWS_AS(vec4("1/4", "1/4", "1/4", "1/2"), SpecError);
  CHECK_THROWS_AS(vec4("1/2", "-1/4", "1/2", "1/4"), SpecError);
  CHECK(vec4("1/4", "1/4", "1/4", "1/4").mean() == Rational(3, 2));
  CHECK(vec4("1/5", "3/10", "1/5", "3/10").mean() == Rational(8, 5));
}

TEST_CASE("frequency pair solver") {
  // Normal point: knowing two quarters recovers the other two.
  auto rec = recover_frequencies(Rational(3, 2), {1, Rational(1, 4)}, {2, Rational(1, 4)});
  CHECK(rec.index_a == 0);
  CHECK(rec.value_a == Rational(1, 4));
  CHECK(rec.index_b == 3);
  CHECK(rec.value_b == Rational(1, 4));

  // theta = 8/5 with v0 = 1/5, v1 = 3/10.
  rec = recover_frequencies(Rational(8, 5), {0, Rational(1, 5)}, {1, Rational(3, 10)});
  CHECK(rec.value_a == Rational(1, 5));   // v2
  CHECK(rec.value_b == Rational(3, 10));  // v3

  // Boundary theta = 0 forces everything onto digit 0.
  rec = recover_frequencies(Rational(0), {1, Rational(0)}, {2, Rational(0)});
  CHECK(rec.value_a == Rational(1));  // v0
  CHECK(rec.value_b == Rational(0));  // v3

  CHECK_THROWS_AS(
      recover_frequencies(Rational(3), {1, Rational(1)}, {2, Rational(0)}),
      InfeasibleFrequencies);
  CHECK_THROWS_AS(
      recover_frequencies(Rational(1), {1, Rational(1, 2)}, {1, Rational(1, 2)}),
      std::domain_error);
  CHECK_THROWS_AS(
      recover_frequencies(Rational(1), {0, Rational(2)}, {1, Rational(0)}),
      std::domain_error);
}

TEST_CASE("recovered frequencies satisfy both constraints exactly") {
  SplitMix64 rng(2024);
  int feasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const StochasticVector v = random_vector(rng, 60);
    const Rational theta = v.mean();
    const int i = static_cast<int>(rng.below(4));
    int j = static_cast<int>(rng.below(4));
    while (j == i) j = static_cast<int>(rng.below(4));
    const auto rec = recover_frequencies(theta, {i, v[static_cast<std::size_t>(i)]},
                                         {j, v[static_cast<std::size_t>(j)]});
    CHECK(rec.value_a == v[static_cast<std::size_t>(rec.index_a)]);
    CHECK(rec.value_b == v[static_cast<std::size_t>(rec.index_b)]);
    ++feasible;
  }
  CHECK(feasible == 300);
}

TEST_CASE("length schedule validation") {
  CHECK_NOTHROW(LengthSchedule::linear().validate(256));
  CHECK_NOTHROW(LengthSchedule::affine(1, 19).validate(256));
  // A constant schedule violates s_k -> inf.
  CHECK_THROWS_AS(
      LengthSchedule::explicit_values(std::vector<std::uint64_t>(64, 7)).validate(63),
      SpecError);
  CHECK_THROWS_AS(LengthSchedule::linear().validate(4), SpecError);
  auto expl = LengthSchedule::explicit_values({1, 2, 3, 4, 5});
  CHECK(expl.at(5) == 5);
  CHECK_THROWS_AS(expl.at(6), SpecError);
  CHECK_THROWS_AS(LengthSchedule::linear().at(0), std::domain_error);
}

TEST_CASE("block_number emits floor-scaled runs") {
  // Uniform column, s_k = 4k: block 1 = 0123, block 2 = 00112233.
  auto plan = constant_plan(vec4("1/4", "1/4", "1/4", "1/4"),
                            LengthSchedule::affine(4, 0));
  DigitStream s = block_number(plan);
  CHECK(s.advance(12) ==
        std::vector<int>{0, 1, 2, 3, 0, 0, 1, 1, 2, 2, 3, 3});
  REQUIRE(s.boundaries() != nullptr);
  CHECK(s.boundaries()->at(0) == 4);
  CHECK(s.boundaries()->at(1) == 12);

  DigitStream zeros =
      block_number(constant_plan(vec4("1", "0", "0", "0"), LengthSchedule::linear()));
  auto digits = zeros.advance(50);
  for (int d : digits) CHECK(d == 0);
}

TEST_CASE("early empty blocks are skipped, not fatal") {
  // Uniform column with s_k = k: blocks 1..3 all floor to zero length.
  DigitStream s =
      block_number(constant_plan(vec4("1/4", "1/4", "1/4", "1/4"), LengthSchedule::linear()));
  auto digits = s.advance(4);
  CHECK(digits == std::vector<int>{0, 1, 2, 3});  // block 4: one of each
  REQUIRE(s.boundaries() != nullptr);
  CHECK(s.boundaries()->at(0) == 0);
  CHECK(s.boundaries()->at(1) == 0);
  CHECK(s.boundaries()->at(2) == 0);
  CHECK(s.boundaries()->at(3) == 4);
}

TEST_CASE("block plan rejects bad columns and stalls") {
  BlockPlan bad{[](std::uint64_t) {
                  return StochasticVector({Rational(1, 2), Rational(1, 2),
                                           Rational(1, 2), Rational(-1, 2)});
                },
                LengthSchedule::linear()};
  DigitStream s = block_number(bad);
  CHECK_THROWS_AS(s.next(), SpecError);
}

TEST_CASE("constant columns converge to the column vector") {
  // With columns fixed at lambda and s_k = k, the frequency error at the K-th
  // block boundary is at most 4 (K + s_{K+1}) / (s_1 + ... + s_K).
  SplitMix64 rng(77);
  for (int trial = 0; trial < 5; ++trial) {
    const StochasticVector lambda = random_vector(rng, 24);
    DigitStream s = block_number(constant_plan(lambda, LengthSchedule::linear()));
    for (std::uint64_t K : {50ull, 200ull}) {
      const std::uint64_t T = K * (K + 1) / 2;
      // Advance to the K-th block boundary (actual emitted length).
      DigitStream fresh = block_number(constant_plan(lambda, LengthSchedule::linear()));
      std::uint64_t emitted = 0;
      for (std::uint64_t k = 1; k <= K; ++k) {
        std::uint64_t len = 0;
        for (int d = 0; d < 4; ++d)
          len += static_cast<std::uint64_t>(
              floor_scaled(lambda[static_cast<std::size_t>(d)], k));
        emitted += len;
      }
      if (emitted == 0) continue;
      fresh.advance_to(emitted);
      const Rational bound =
          Rational(4) *
          Rational(static_cast<std::int64_t>(K + (K + 1)), static_cast<std::int64_t>(T));
      for (int d = 0; d < 4; ++d) {
        const Rational v = relative_frequency(fresh.stats(), d);
        CHECK(abs(v - lambda[static_cast<std::size_t>(d)]) <= bound);
      }
    }
    (void)s;
  }
}

TEST_CASE("mean-pinned columns pin the stream mean") {
  // Columns satisfying tau1 + 2 tau2 + 3 tau3 = theta give |r_N - theta| <=
  // 12 K / N at the K-th boundary (each block loses < 12 in weighted digits).
  SplitMix64 rng(88);
  for (int trial = 0; trial < 5; ++trial) {
    StochasticVector base = random_vector(rng, 24);
    const Rational theta = base.mean();
    if (theta == Rational(0) || theta == Rational(3)) continue;
    // Columns alternate between base and a mean-matched partner when one exists.
    std::vector<StochasticVector> pool{base};
    for (int tries = 0; tries < 50 && pool.size() < 2; ++tries) {
      StochasticVector cand = random_vector(rng, 24);
      if (cand.mean() == theta) pool.push_back(cand);
    }
    BlockPlan plan{[pool](std::uint64_t k) { return pool[k % pool.size()]; },
                   LengthSchedule::linear()};
    DigitStream s = block_number(plan);
    const std::uint64_t K = 300;
    s.advance_to(1);  // force planning start
    // Walk to the K-th boundary using the source's own boundary log.
    std::uint64_t target = 0;
    {
      DigitStream probe = block_number(plan);
      probe.skip(1);
      while (probe.boundaries()->size() < K) probe.next();
      target = probe.boundaries()->at(K - 1);
    }
    if (target == 0) continue;
    DigitStream fresh = block_number(plan);
    fresh.advance_to(target);
    const Rational err = abs(relative_mean(fresh.stats()) - theta);
    CHECK(err <= Rational(12 * static_cast<std::int64_t>(K),
                          static_cast<std::int64_t>(target)));
  }
}

TEST_CASE("oscillator shares switch points between identical pairs") {
  GreedyRun run = greedy_oscillator(LengthSchedule::linear(), Rational(3, 10),
                                    Rational(1, 10), Rational(3, 10), Rational(1, 10),
                                    Rational(1, 20), 2000, 2);
  CHECK(run.a == run.b);
  CHECK(run.switches.size() >= 2);
}

TEST_CASE("oscillator ratios cross both thresholds on alternating runs") {
  const Rational hi(3, 10), lo(1, 10), eps(1, 20);
  GreedyRun run = greedy_oscillator(LengthSchedule::linear(), hi, lo, hi, lo, eps,
                                    5000, 3);
  // At each switch index the ratio has just crossed the active threshold.
  bool expect_high = true;
  for (std::uint64_t sw : run.switches) {
    const Rational& r = run.ratio_a[sw - 1];
    if (expect_high)
      CHECK(r > hi - eps);
    else
      CHECK(r < lo + eps);
    expect_high = !expect_high;
  }
  // Oscillation amplitude over the whole run.
  Rational lo_seen = run.ratio_a.back(), hi_seen = run.ratio_a.back();
  for (const Rational& r : run.ratio_a) {
    lo_seen = min(lo_seen, r);
    hi_seen = max(hi_seen, r);
  }
  CHECK(hi_seen - lo_seen >= hi - lo - Rational(2) * eps);
}

TEST_CASE("oscillator with distinct pairs reaches both amplitude floors") {
  const Rational eps(1, 25);
  GreedyRun run = greedy_oscillator(LengthSchedule::linear(), Rational(3, 10),
                                    Rational(1, 10), Rational(2, 5), Rational(1, 5),
                                    eps, 5000, 3);
  auto amplitude = [](const std::vector<Rational>& series) {
    Rational lo = series.back(), hi = series.back();
    for (const Rational& r : series) {
      lo = min(lo, r);
      hi = max(hi, r);
    }
    return hi - lo;
  };
  CHECK(amplitude(run.ratio_a) >= Rational(1, 5) - Rational(2) * eps);
  CHECK(amplitude(run.ratio_b) >= Rational(1, 5) - Rational(2) * eps);
}

TEST_CASE("oscillator validation and horizon exhaustion") {
  CHECK_THROWS_AS(greedy_oscillator(LengthSchedule::linear(), Rational(1, 2),
                                    Rational(1, 2), Rational(1, 4), Rational(1, 8),
                                    Rational(1, 100), 100),
                  SpecError);
  CHECK_THROWS_AS(greedy_oscillator(LengthSchedule::linear(), Rational(1, 2),
                                    Rational(1, 4), Rational(1, 2), Rational(1, 4),
                                    Rational(1, 4), 100),
                  SpecError);  // epsilon not below gap/2
  try {
    greedy_oscillator(LengthSchedule::linear(), Rational(3, 10), Rational(1, 10),
                      Rational(3, 10), Rational(1, 10), Rational(1, 20), 10, 1);
    FAIL("expected HorizonExhausted");
  } catch (const HorizonExhausted& e) {
    CHECK(e.phase == 1);
    CHECK(e.partial.a.size() == 10);
    CHECK(e.partial.switches.empty());
  }
}

TEST_CASE("theta2 witness columns match the input vectors") {
  // Completing (p0, a) under theta reproduces p and q exactly.
  const Rational theta(8, 5);
  const StochasticVector p = vec4("1/5", "3/10", "1/5", "3/10");
  const StochasticVector q = vec4("1/5", "1/10", "3/5", "1/10");
  CHECK(complete_column(theta, p[0], p[1]) == p);
  CHECK(complete_column(theta, q[0], q[1]) == q);
}

TEST_CASE("theta2 witness validation") {
  const StochasticVector p = vec4("1/5", "3/10", "1/5", "3/10");
  const StochasticVector q = vec4("1/5", "1/10", "3/5", "1/10");
  CHECK_THROWS_AS(theta2_witness({Rational(8, 5), p, p}), SpecError);      // p1 == q1
  CHECK_THROWS_AS(theta2_witness({Rational(0), p, q}), SpecError);         // boundary
  CHECK_THROWS_AS(theta2_witness({Rational(3), p, q}), SpecError);         // boundary
  CHECK_THROWS_AS(theta2_witness({Rational(3, 2), p, q}), SpecError);      // wrong mean
  const StochasticVector p0off = vec4("3/10", "1/5", "1/5", "3/10");
  CHECK_THROWS_AS(theta2_witness({Rational(8, 5), p0off, q}), SpecError);  // p0 != q0
}

TEST_CASE("theta2 witness behavior on a short horizon") {
  const Theta2Params params{Rational(8, 5), vec4("1/5", "3/10", "1/5", "3/10"),
                            vec4("1/5", "1/10", "3/5", "1/10")};
  auto factory = [&] { return theta2_witness(params); };
  DigitStream a = factory();
  DigitStream b = factory();
  CHECK(a.advance(20000) == b.advance(20000));  // deterministic

  DigitStream s = factory();
  s.advance_to(100000);
  CHECK(abs(relative_mean(s.stats()) - Rational(8, 5)) < Rational(1, 50));
  CHECK(abs(relative_frequency(s.stats(), 0) - Rational(1, 5)) < Rational(1, 50));
  REQUIRE(s.switch_marks() != nullptr);
  CHECK(s.switch_marks()->size() >= 4);

  // v1 at switch marks past 10^4 digits spans nearly the full regime gap.
  Rational lo_seen(1), hi_seen(0);
  for (std::uint64_t mark : *s.switch_marks()) {
    if (mark < 10000 || mark > 100000) continue;
    DigitStream probe = factory();
    probe.advance_to(mark);
    const Rational v1 = relative_frequency(probe.stats(), 1);
    lo_seen = min(lo_seen, v1);
    hi_seen = max(hi_seen, v1);
  }
  CHECK(hi_seen - lo_seen >= Rational(9, 100));
}

TEST_CASE("theta3 witness validation") {
  // All four regime combinations feasible.
  CHECK_NOTHROW(theta3_witness({Rational(3, 2), Rational(27, 100), Rational(1, 4),
                                Rational(27, 100), Rational(1, 4)}));
  // tau3 = theta - 2 + 2 tau0 + tau1 < 0 for every combination here.
  try {
    theta3_witness({Rational(1, 2), Rational(1, 5), Rational(1, 10), Rational(1, 5),
                    Rational(1, 10)});
    FAIL("expected SpecError");
  } catch (const SpecError& e) {
    CHECK(std::string(e.what()).find("incompatible vectors") != std::string::npos);
  }
  CHECK_THROWS_AS(theta3_witness({Rational(3, 2), Rational(1, 10), Rational(1, 5),
                                  Rational(27, 100), Rational(1, 4)}),
                  SpecError);  // p0 < q0
  CHECK_THROWS_AS(theta3_witness({Rational(3), Rational(27, 100), Rational(1, 4),
                                  Rational(27, 100), Rational(1, 4)}),
                  SpecError);  // boundary
}

TEST_CASE("theta3 witness behavior on a short horizon") {
  const Theta3Params params{Rational(2), Rational(1, 5), Rational(1, 20),
                            Rational(1, 5), Rational(1, 20), LengthSchedule::linear(),
                            Rational(1, 40)};
  auto factory = [&] { return theta3_witness(params); };
  DigitStream s = factory();
  s.advance_to(100000);
  CHECK(abs(relative_mean(s.stats()) - Rational(2)) < Rational(1, 50));
  REQUIRE(s.switch_marks() != nullptr);
  CHECK(s.switch_marks()->size() >= 2);

  DigitStream t = factory();
  CHECK(factory().advance(5000) == t.advance(5000));
}
