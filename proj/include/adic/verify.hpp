#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "adic/classify.hpp"
#include "adic/dimension.hpp"
#include "adic/epsilon_blocks.hpp"
#include "adic/run.hpp"
#include "adic/witnesses.hpp"

namespace adic {

// The built-in verification suites behind `adic verify` and the acceptance
// test binary.  Every tolerance is pinned here; horizons can be reduced for
// quick runs, in which case the mean tolerances widen as 1/sqrt(N) and the
// oscillation-amplitude checks state what they skipped.
struct VerifyOptions {
  std::uint64_t long_horizon = 1000000;  // digits per long-horizon stream
  std::uint64_t perm_horizon = 100000;   // criterion 7 prefix
  std::size_t box_samples = 10000;       // criterion 9 sample count
  std::uint64_t seed = 20240501;
  std::string scratch_dir = "adic_verify_tmp";

  void scale_to_horizon(std::uint64_t h) {
    long_horizon = h;
    perm_horizon = std::min<std::uint64_t>(h, 100000);
  }
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace verify_detail {

// |r_N - theta| tolerance: 1/100 at N >= 10^6, widening as ceil(sqrt(10^6/N))/100.
inline Rational mean_tolerance(std::uint64_t n) {
  std::int64_t f = 1;
  while (static_cast<unsigned __int128>(f) * static_cast<unsigned __int128>(f) * n <
         1000000ull)
    ++f;
  return Rational(f, 100);
}

inline StochasticVector random_vector(SplitMix64& rng, std::int64_t den) {
  std::int64_t c1 = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(den) + 1));
  std::int64_t c2 = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(den) + 1));
  std::int64_t c3 = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(den) + 1));
  if (c1 > c2) std::swap(c1, c2);
  if (c2 > c3) std::swap(c2, c3);
  if (c1 > c2) std::swap(c1, c2);
  return StochasticVector({Rational(c1, den), Rational(c2 - c1, den),
                           Rational(c3 - c2, den), Rational(den - c3, den)});
}

// Rejection-samples a stochastic vector with the requested mean.
inline std::optional<StochasticVector> random_mean_matched(SplitMix64& rng,
                                                           const Rational& theta,
                                                           std::int64_t den,
                                                           int tries) {
  for (int i = 0; i < tries; ++i) {
    const Rational tau0(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(den))), den);
    const Rational tau1(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(den))), den);
    try {
      return complete_column(theta, tau0, tau1);
    } catch (const SpecError&) {
    }
  }
  return std::nullopt;
}

struct NamedFactory {
  std::string name;
  StreamFactory factory;
};

inline Theta2Params theta2_instance() {
  return Theta2Params{
      Rational(8, 5),
      StochasticVector({Rational(1, 5), Rational(3, 10), Rational(1, 5), Rational(3, 10)}),
      StochasticVector({Rational(1, 5), Rational(1, 10), Rational(3, 5), Rational(1, 10)}),
      LengthSchedule::linear(), Rational(1, 20)};
}

inline Theta3Params theta3_instance() {
  return Theta3Params{Rational(2),    Rational(1, 5), Rational(1, 20),
                      Rational(1, 5), Rational(1, 20), LengthSchedule::linear(),
                      Rational(1, 40)};
}

inline StochasticVector eps_p() {
  return StochasticVector({Rational(1, 5), Rational(3, 10), Rational(1, 5), Rational(3, 10)});
}
inline StochasticVector eps_q() {
  return StochasticVector({Rational(1, 5), Rational(1, 10), Rational(3, 5), Rational(1, 10)});
}

// The 20 seeded streams shared by criteria 1 and 6.
inline std::vector<NamedFactory> shared_streams(std::uint64_t seed) {
  std::vector<NamedFactory> out;
  SplitMix64 rng(seed);

  for (int i = 0; i < 4; ++i) {
    const StochasticVector tau = random_vector(rng, 24);
    out.push_back({"block constant " + tau.str(),
                   [tau] { return block_number(constant_plan(tau, LengthSchedule::linear())); }});
  }
  for (int i = 0; i < 4; ++i) {
    const StochasticVector a = random_vector(rng, 24);
    const StochasticVector b = random_vector(rng, 24);
    out.push_back({"block cycle " + a.str() + "/" + b.str(), [a, b] {
                     return block_number({[a, b](std::uint64_t k) { return k % 2 ? a : b; },
                                          LengthSchedule::linear()});
                   }});
  }
  out.push_back({"theta2 witness", [] { return theta2_witness(theta2_instance()); }});
  out.push_back({"theta3 witness", [] { return theta3_witness(theta3_instance()); }});

  EpsilonConfig eps_cfg;
  eps_cfg.eps = EpsilonBits::seeded(rng.next());
  out.push_back({"eps-block theta2", [eps_cfg] {
                   return epsilon_theta2_stream(eps_p(), eps_q(), Rational(8, 5), eps_cfg);
                 }});
  EpsilonConfig single_cfg;
  single_cfg.eps = EpsilonBits::seeded(rng.next());
  out.push_back({"eps-block single regime", [single_cfg] {
                   return epsilon_theta2_stream(eps_p(), eps_p(), Rational(8, 5), single_cfg);
                 }});
  EpsilonConfig eps3_cfg;
  eps3_cfg.eps = EpsilonBits::seeded(rng.next());
  out.push_back({"eps-block theta3", [eps3_cfg] {
                   return epsilon_theta3_stream({Rational(1, 5), Rational(1, 10)},
                                                {Rational(1, 5), Rational(1, 10)},
                                                Rational(3, 2), eps3_cfg);
                 }});
  EpsilonConfig perm_cfg;
  perm_cfg.eps = EpsilonBits::seeded(rng.next());
  const std::uint64_t perm_seed = rng.next();
  out.push_back({"permuted eps-block", [perm_cfg, perm_seed] {
                   return permute_blocks(
                       [perm_cfg] {
                         return epsilon_theta2_stream(eps_p(), eps_q(), Rational(8, 5),
                                                      perm_cfg);
                       },
                       BlockPermutation::seeded(perm_seed));
                 }});

  for (int i = 0; i < 4; ++i) {
    const std::int64_t den = 3 + static_cast<std::int64_t>(rng.below(997));
    const std::int64_t num = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(den)));
    out.push_back({"rational " + std::to_string(num) + "/" + std::to_string(den),
                   [num, den] { return rational_stream(num, den); }});
  }
  for (int i = 0; i < 2; ++i) {
    std::vector<int> pattern;
    const std::size_t len = 1 + rng.below(16);
    for (std::size_t p = 0; p < len; ++p)
      pattern.push_back(static_cast<int>(rng.below(4)));
    out.push_back({"periodic len " + std::to_string(len),
                   [pattern] { return periodic_stream(pattern); }});
  }
  return out;  // 20 streams
}

struct SharedRuns {
  std::vector<NamedFactory> streams;
  std::vector<std::vector<TrackRow>> rows;
};

inline SharedRuns shared_runs(const VerifyOptions& opt) {
  SharedRuns runs;
  runs.streams = shared_streams(opt.seed);
  const CheckpointLadder ladder = CheckpointLadder::geometric(opt.long_horizon);
  for (const auto& nf : runs.streams) runs.rows.push_back(track(nf.factory, ladder));
  return runs;
}

// Merged geometric + regime-switch checkpoint ladder for a witness stream.
inline CheckpointLadder witness_ladder(const StreamFactory& factory,
                                       std::uint64_t horizon) {
  DigitStream probe = factory();
  probe.advance_to(horizon);
  std::vector<std::uint64_t> positions = CheckpointLadder::geometric(horizon).positions();
  if (const auto* m = probe.switch_marks())
    for (std::uint64_t pos : *m)
      if (pos >= 1 && pos <= horizon) positions.push_back(pos);
  return CheckpointLadder::merged(positions, horizon);
}

struct TailSpan {
  Rational lo, hi;
};

inline TailSpan tail_span(const std::vector<TrackRow>& rows, int digit) {
  const std::size_t tail = rows.size() - rows.size() / 2;
  TailSpan span{rows[rows.size() - tail].v[static_cast<std::size_t>(digit)],
                rows[rows.size() - tail].v[static_cast<std::size_t>(digit)]};
  for (std::size_t i = rows.size() - tail; i < rows.size(); ++i) {
    span.lo = min(span.lo, rows[i].v[static_cast<std::size_t>(digit)]);
    span.hi = max(span.hi, rows[i].v[static_cast<std::size_t>(digit)]);
  }
  return span;
}

using Clock = std::chrono::steady_clock;

inline std::string elapsed_str(Clock::time_point start) {
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
  return std::to_string(ms) + " ms";
}

// --- criterion 1 -----------------------------------------------------------

inline CriterionResult criterion_system1(const SharedRuns& runs) {
  const auto start = Clock::now();
  std::uint64_t checkpoints = 0;
  for (std::size_t s = 0; s < runs.streams.size(); ++s) {
    for (const TrackRow& row : runs.rows[s]) {
      Rational sum = 0, weighted = 0;
      for (int d = 0; d < 4; ++d) {
        sum += row.v[static_cast<std::size_t>(d)];
        weighted += Rational(d) * row.v[static_cast<std::size_t>(d)];
      }
      if (sum != Rational(1) || row.r != weighted)
        return {1, "system-(1) identities", false,
                "identity failed for \"" + runs.streams[s].name + "\" at n = " +
                    std::to_string(row.n)};
      ++checkpoints;
    }
  }
  return {1, "system-(1) identities", true,
          std::to_string(runs.streams.size()) + " streams, " +
              std::to_string(checkpoints) + " checkpoints, exact (" +
              elapsed_str(start) + ")"};
}

// --- criterion 2 -----------------------------------------------------------

struct Frac128 {
  int128 num;
  int128 den;  // > 0, never reduced
};

inline Frac128 frac_sub(Frac128 x, Frac128 y) {
  return {x.num * y.den - y.num * x.den, x.den * y.den};
}
inline Frac128 frac_scale(std::int64_t c, Frac128 x) { return {c * x.num, x.den}; }
inline bool frac_eq(Frac128 x, const Rational& r) {
  return x.num * r.den() == static_cast<int128>(r.num()) * x.den;
}
inline bool frac_in_unit(Frac128 x) { return x.num >= 0 && x.num <= x.den; }

// Independent Cramer solve of {va + vb = rest, a va + b vb = weighted} on
// unreduced 128-bit fractions.
inline std::pair<Frac128, Frac128> cramer(int a, int b, Frac128 rest, Frac128 weighted) {
  const std::int64_t det = b - a;
  Frac128 va = frac_sub(frac_scale(b, rest), weighted);
  va.den *= det;
  Frac128 vb = frac_sub(weighted, frac_scale(a, rest));
  vb.den *= det;
  return {va, vb};
}

inline CriterionResult criterion_recovery(std::uint64_t seed) {
  const auto start = Clock::now();
  SplitMix64 rng(seed ^ 0xabcdef);
  const int cases[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  int feasible_checked = 0, infeasible_checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int i = cases[trial % 6][0], j = cases[trial % 6][1];
    Rational theta, vi, vj;
    bool expect_feasible = trial % 3 != 2;
    if (expect_feasible) {
      const StochasticVector v = random_vector(rng, 60);
      theta = v.mean();
      vi = v[static_cast<std::size_t>(i)];
      vj = v[static_cast<std::size_t>(j)];
    } else {
      theta = Rational(static_cast<std::int64_t>(rng.below(121)), 40);
      vi = Rational(static_cast<std::int64_t>(rng.below(61)), 60);
      vj = Rational(static_cast<std::int64_t>(rng.below(61)), 60);
    }
    int unknown[2];
    int u = 0;
    for (int d = 0; d < 4; ++d)
      if (d != i && d != j) unknown[u++] = d;
    // rest = 1 - vi - vj and weighted = theta - i vi - j vj, unreduced.
    Frac128 r{(static_cast<int128>(vi.den()) * vj.den() -
               static_cast<int128>(vi.num()) * vj.den() -
               static_cast<int128>(vj.num()) * vi.den()),
              static_cast<int128>(vi.den()) * vj.den()};
    Frac128 w = frac_sub(frac_sub({theta.num(), theta.den()}, frac_scale(i, {vi.num(), vi.den()})),
                         frac_scale(j, {vj.num(), vj.den()}));
    const auto [bva, bvb] = cramer(unknown[0], unknown[1], r, w);
    const bool brute_feasible = frac_in_unit(bva) && frac_in_unit(bvb);
    try {
      const auto rec = recover_frequencies(theta, {i, vi}, {j, vj});
      if (!brute_feasible)
        return {2, "frequency recovery vs independent solve", false,
                "library accepted an instance the brute-force solve rejects"};
      if (!frac_eq(bva, rec.value_a) || !frac_eq(bvb, rec.value_b))
        return {2, "frequency recovery vs independent solve", false,
                "value mismatch at trial " + std::to_string(trial)};
      ++feasible_checked;
    } catch (const InfeasibleFrequencies&) {
      if (brute_feasible)
        return {2, "frequency recovery vs independent solve", false,
                "library rejected a feasible instance at trial " + std::to_string(trial)};
      ++infeasible_checked;
    }
  }
  // The fully symmetric point is a fixed point.
  const auto rec =
      recover_frequencies(Rational(3, 2), {1, Rational(1, 4)}, {2, Rational(1, 4)});
  if (rec.value_a != Rational(1, 4) || rec.value_b != Rational(1, 4))
    return {2, "frequency recovery vs independent solve", false,
            "symmetric point is not a fixed point"};
  return {2, "frequency recovery vs independent solve", true,
          std::to_string(feasible_checked) + " exact agreements, " +
              std::to_string(infeasible_checked) + " matched rejections (" +
              elapsed_str(start) + ")"};
}

// --- criterion 3 -----------------------------------------------------------

inline CriterionResult criterion_mean_pinning(const VerifyOptions& opt) {
  const auto start = Clock::now();
  SplitMix64 rng(opt.seed ^ 0x333333);
  const Rational tol = mean_tolerance(opt.long_horizon);
  Rational worst = 0;
  int built = 0;
  while (built < 20) {
    const StochasticVector base = random_vector(rng, 24);
    const Rational theta = base.mean();
    if (theta <= Rational(1, 4) || theta >= Rational(11, 4)) continue;
    std::vector<StochasticVector> pool{base};
    for (int extra = 0; extra < 2; ++extra)
      if (auto v = random_mean_matched(rng, theta, 24, 40)) pool.push_back(*v);
    DigitStream s = block_number(
        {[pool](std::uint64_t k) { return pool[k % pool.size()]; }, LengthSchedule::linear()});
    s.advance_to(opt.long_horizon);
    const Rational err = abs(relative_mean(s.stats()) - theta);
    worst = max(worst, err);
    if (err >= tol)
      return {3, "block mean pinning", false,
              "|r_N - theta| = " + err.decimal() + " >= " + tol.str() + " for family " +
                  std::to_string(built)};
    ++built;
  }
  return {3, "block mean pinning", true,
          "20 families, worst |r_N - theta| = " + worst.decimal() + " < " + tol.str() +
              " at N = " + std::to_string(opt.long_horizon) + " (" + elapsed_str(start) +
              ")"};
}

// --- criteria 4 and 5 ------------------------------------------------------

inline CriterionResult criterion_theta2(const VerifyOptions& opt) {
  const auto start = Clock::now();
  const Theta2Params params = theta2_instance();
  auto factory = [params] { return theta2_witness(params); };
  const std::uint64_t N = opt.long_horizon;
  const CheckpointLadder ladder = witness_ladder(factory, N);
  const auto rows = track(factory, ladder);
  std::string detail;

  const Rational v0 = rows.back().v[0];
  const Rational tol = mean_tolerance(N);
  if (abs(v0 - Rational(1, 5)) >= tol)
    return {4, "theta2 witness behavior", false,
            "|v0 - 1/5| = " + abs(v0 - Rational(1, 5)).decimal() + " >= " + tol.str()};
  detail += "|v0 - 1/5| = " + abs(v0 - Rational(1, 5)).decimal();

  if (N >= 100000) {
    const Rational need = N >= 1000000 ? Rational(1, 10) : Rational(9, 100);
    const TailSpan span = tail_span(rows, 1);
    if (span.hi - span.lo < need)
      return {4, "theta2 witness behavior", false,
              "v1 tail amplitude " + (span.hi - span.lo).decimal() + " < " + need.str()};
    detail += ", v1 tail amplitude " + (span.hi - span.lo).decimal() + " >= " + need.str();
    const ConvergenceVerdict verdict = classify(factory, N, ladder);
    if (verdict.guess != ClassGuess::Theta2)
      return {4, "theta2 witness behavior", false,
              std::string("classified as ") + to_string(verdict.guess)};
    detail += ", classified Theta2";
  } else {
    detail += ", amplitude/class checks need N >= 1e5 (skipped)";
  }
  return {4, "theta2 witness behavior", true, detail + " (" + elapsed_str(start) + ")"};
}

inline CriterionResult criterion_theta3(const VerifyOptions& opt) {
  const auto start = Clock::now();
  const Theta3Params params = theta3_instance();
  auto factory = [params] { return theta3_witness(params); };
  const std::uint64_t N = opt.long_horizon;
  const CheckpointLadder ladder = witness_ladder(factory, N);
  const auto rows = track(factory, ladder);
  std::string detail;

  const Rational r = rows.back().r;
  const Rational tol = mean_tolerance(N);
  if (abs(r - params.theta) >= tol)
    return {5, "theta3 witness behavior", false,
            "|r_N - theta| = " + abs(r - params.theta).decimal() + " >= " + tol.str()};
  detail += "|r_N - theta| = " + abs(r - params.theta).decimal();

  if (N >= 100000) {
    const Rational need = N >= 1000000 ? Rational(1, 10) : Rational(9, 100);
    for (int digit : {0, 1}) {
      const TailSpan span = tail_span(rows, digit);
      if (span.hi - span.lo < need)
        return {5, "theta3 witness behavior", false,
                "v" + std::to_string(digit) + " tail amplitude " +
                    (span.hi - span.lo).decimal() + " < " + need.str()};
      detail += ", v" + std::to_string(digit) + " amplitude " +
                (span.hi - span.lo).decimal();
    }
    const ConvergenceVerdict verdict = classify(factory, N, ladder);
    if (verdict.guess != ClassGuess::Theta3)
      return {5, "theta3 witness behavior", false,
              std::string("classified as ") + to_string(verdict.guess)};
    detail += ", classified Theta3";
  } else {
    detail += ", amplitude/class checks need N >= 1e5 (skipped)";
  }
  return {5, "theta3 witness behavior", true, detail + " (" + elapsed_str(start) + ")"};
}

// --- criterion 6 -----------------------------------------------------------

inline CriterionResult criterion_squeeze(const SharedRuns& runs,
                                         const VerifyOptions& opt) {
  const auto start = Clock::now();
  for (std::size_t s = 0; s < runs.streams.size(); ++s) {
    for (const TrackRow& row : runs.rows[s]) {
      for (int d = 1; d <= 3; ++d)
        if (row.v[static_cast<std::size_t>(d)] > row.r)
          return {6, "theta-boundary squeeze", false,
                  "v" + std::to_string(d) + " > r for \"" + runs.streams[s].name + "\""};
      for (int d = 0; d <= 2; ++d)
        if (row.v[static_cast<std::size_t>(d)] > Rational(3) - row.r)
          return {6, "theta-boundary squeeze", false,
                  "v" + std::to_string(d) + " > 3 - r for \"" + runs.streams[s].name +
                      "\""};
    }
  }
  // A stream with r_N below 10^-3 must land in Theta1.
  std::vector<int> sparse(2000, 0);
  sparse.back() = 1;
  auto factory = [sparse] { return periodic_stream(sparse); };
  DigitStream probe = factory();
  probe.advance_to(opt.long_horizon);
  const Rational r_n = relative_mean(probe.stats());
  if (r_n >= Rational(1, 1000))
    return {6, "theta-boundary squeeze", false, "sparse stream mean not below 1/1000"};
  const ConvergenceVerdict verdict = classify(
      factory, opt.long_horizon, CheckpointLadder::geometric(opt.long_horizon));
  if (verdict.guess != ClassGuess::Theta1)
    return {6, "theta-boundary squeeze", false,
            std::string("near-zero-mean stream classified as ") +
                to_string(verdict.guess)};
  return {6, "theta-boundary squeeze", true,
          "exact on all shared checkpoints; r_N = " + r_n.str() + " stream is Theta1 (" +
              elapsed_str(start) + ")"};
}

// --- criterion 7 -----------------------------------------------------------

inline CriterionResult criterion_permutation(const VerifyOptions& opt) {
  const auto start = Clock::now();
  EpsilonConfig cfg;
  cfg.eps = EpsilonBits::seeded(opt.seed ^ 0x777);
  auto base = [cfg] { return epsilon_theta2_stream(eps_p(), eps_q(), Rational(8, 5), cfg); };

  const std::uint64_t k = 64;
  const std::uint64_t blocks = opt.perm_horizon / k;
  std::vector<std::vector<std::uint64_t>> reference;
  {
    DigitStream orig = base();
    for (std::uint64_t j = 1; j <= blocks; ++j) {
      orig.advance_to(k * j);
      reference.push_back(orig.stats().counts);
    }
  }
  for (std::uint64_t variant = 1; variant <= 100; ++variant) {
    DigitStream permuted = permute_blocks(base, BlockPermutation::seeded(variant));
    for (std::uint64_t j = 1; j <= blocks; ++j) {
      permuted.advance_to(k * j);
      if (permuted.stats().counts != reference[j - 1])
        return {7, "block permutation invariance", false,
                "variant " + std::to_string(variant) + " diverges at boundary " +
                    std::to_string(k * j)};
    }
  }
  // Canary: a flipped digit must be caught by the same comparison.
  {
    DigitStream permuted = permute_blocks(base, BlockPermutation::seeded(1));
    std::vector<int> digits = permuted.advance(k * std::min<std::uint64_t>(blocks, 4));
    digits[k * 2 + 5] = (digits[k * 2 + 5] + 1) % 4;
    PrefixStats tampered(4);
    bool caught = false;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      tampered.push(digits[i]);
      if ((i + 1) % k == 0 && tampered.counts != reference[(i + 1) / k - 1]) {
        caught = true;
        break;
      }
    }
    if (!caught)
      return {7, "block permutation invariance", false,
              "fault canary not detected: a flipped digit went unnoticed"};
  }
  return {7, "block permutation invariance", true,
          "100 seeded variants, " + std::to_string(blocks) +
              " boundaries each, exact; fault canary detected (" + elapsed_str(start) +
              ")"};
}

// --- criterion 8 -----------------------------------------------------------

inline CriterionResult criterion_crossover(std::uint64_t seed) {
  const auto start = Clock::now();
  SplitMix64 rng(seed ^ 0x888);
  for (std::uint64_t k : {2ull, 4ull, 8ull, 16ull}) {
    const CylinderCoverSpec spec{k};
    const Rational alpha0(1, 2 * static_cast<std::int64_t>(k));
    for (std::uint64_t t = 1; t <= 50; ++t)
      if (cover_alpha_volume_log2(spec, k * t, alpha0) != Rational(0))
        return {8, "crossover dimension", false,
                "log2 volume nonzero at alpha = 1/(2k), k = " + std::to_string(k)};
    for (int trial = 0; trial < 20; ++trial) {
      const Rational above = alpha0 * (Rational(1) + Rational(1 + static_cast<std::int64_t>(rng.below(400)), 400));
      const Rational below = alpha0 * Rational(1 + static_cast<std::int64_t>(rng.below(399)), 400);
      for (std::uint64_t t = 1; t < 50; ++t) {
        if (!(cover_alpha_volume_log2(spec, k * (t + 1), above) <
              cover_alpha_volume_log2(spec, k * t, above)))
          return {8, "crossover dimension", false, "volumes not decreasing above 1/(2k)"};
        if (!(cover_alpha_volume_log2(spec, k * (t + 1), below) >
              cover_alpha_volume_log2(spec, k * t, below)))
          return {8, "crossover dimension", false, "volumes not increasing below 1/(2k)"};
      }
    }
  }
  if (crossover_dimension({8}) != Rational(1, 16))
    return {8, "crossover dimension", false, "crossover_dimension(8) != 1/16"};
  return {8, "crossover dimension", true,
          "exact at t <= 50 for k in {2,4,8,16}; dichotomy on 20 random alpha per side (" +
              elapsed_str(start) + ")"};
}

// --- criterion 9 -----------------------------------------------------------

inline CriterionResult criterion_box_count(const VerifyOptions& opt) {
  const auto start = Clock::now();
  std::string detail;

  const auto uniform =
      sample_uniform_points(opt.box_samples, 12, 4, opt.seed ^ 0x9991);
  const auto full = box_counting_estimate(uniform, 10);
  if (std::abs(full.value - 1.0) > 0.05)
    return {9, "box counting vs formula", false,
            "full interval estimate " + std::to_string(full.value)};
  detail += "full " + std::to_string(full.value);

  const StochasticVector half({Rational(1, 2), Rational(1, 2), Rational(0), Rational(0)});
  auto half_base = [half] {
    return block_number(constant_plan(half, LengthSchedule::affine(1, 19)));
  };
  auto half_variant = [&](std::uint64_t i) {
    return permute_blocks(half_base, BlockPermutation::seeded(opt.seed ^ (i + 1)),
                          /*fix_first=*/false);
  };
  const auto half_points = sample_variant_points(half_variant, opt.box_samples, 12);
  const auto half_est = box_counting_estimate(half_points, 10);
  if (std::abs(half_est.value - 0.5) > 0.05)
    return {9, "box counting vs formula", false,
            "half-dimension estimate " + std::to_string(half_est.value)};
  detail += ", (1/2,1/2,0,0) " + std::to_string(half_est.value);

  const StochasticVector marker({Rational(1, 4), Rational(1, 2), Rational(0), Rational(1, 4)});
  auto marker_variant = [&](std::uint64_t i) {
    EpsilonConfig cfg;
    cfg.k = 4;
    cfg.eps = EpsilonBits::seeded(opt.seed ^ (0x5000 + i));
    return epsilon_theta2_stream(marker, marker, Rational(5, 4), cfg);
  };
  const auto marker_points = sample_variant_points(marker_variant, opt.box_samples, 12);
  const auto marker_est = box_counting_estimate(marker_points, 10);
  if (std::abs(marker_est.value - 0.125) > 0.05)
    return {9, "box counting vs formula", false,
            "marker family estimate " + std::to_string(marker_est.value) +
                " not within 0.05 of 1/8"};
  detail += ", marker family " + std::to_string(marker_est.value);

  return {9, "box counting vs formula", true, detail + " (" + elapsed_str(start) + ")"};
}

// --- criterion 10 ----------------------------------------------------------

inline CriterionResult criterion_determinism(const VerifyOptions& opt) {
  namespace fs = std::filesystem;
  const auto start = Clock::now();
  const fs::path dir = fs::path(opt.scratch_dir);
  fs::create_directories(dir);

  struct Config {
    const char* name;
    json spec;
    StreamFileFormat format;
    std::uint64_t horizon;
    bool analyze;
  };
  const std::vector<Config> configs = {
      {"rational", json{{"construction", "rational"}, {"numerator", 1}, {"denominator", 3}},
       StreamFileFormat::Ascii, 10000, true},
      {"theta2",
       json{{"construction", "theta2"},
            {"theta", "8/5"},
            {"p", {"1/5", "3/10", "1/5", "3/10"}},
            {"q", {"1/5", "1/10", "3/5", "1/10"}},
            {"epsilon", "1/20"}},
       StreamFileFormat::Ascii, 100000, false},
      {"theta3",
       json{{"construction", "theta3"},
            {"theta", "2"},
            {"p0", "1/5"},
            {"q0", "1/20"},
            {"p1", "1/5"},
            {"q1", "1/20"},
            {"epsilon", "1/40"}},
       StreamFileFormat::Packed, 100000, false},
      {"eps-block",
       json{{"construction", "eps-block-theta2"},
            {"theta", "8/5"},
            {"p", {"1/5", "3/10", "1/5", "3/10"}},
            {"q", {"1/5", "1/10", "3/5", "1/10"}},
            {"eps", {{"kind", "seeded"}, {"seed", 424242}}}},
       StreamFileFormat::Ascii, 64000, true},
      {"permuted",
       json{{"construction", "permuted"},
            {"base",
             {{"construction", "eps-block-theta2"},
              {"theta", "8/5"},
              {"p", {"1/5", "3/10", "1/5", "3/10"}},
              {"q", {"1/5", "1/10", "3/5", "1/10"}},
              {"eps", {{"kind", "seeded"}, {"seed", 5}}}}},
            {"permutation", {{"kind", "seeded"}, {"seed", 7}}}},
       StreamFileFormat::Ascii, 32000, false},
  };

  std::string detail;
  for (const Config& cfg : configs) {
    std::vector<std::string> digit_bytes, meta_bytes, csv_bytes;
    for (int pass = 0; pass < 2; ++pass) {
      const std::string out =
          (dir / (std::string(cfg.name) + "_pass" + std::to_string(pass) + ".dat")).string();
      GenerateConfig gen;
      gen.spec_doc = cfg.spec;
      gen.out_path = out;
      gen.horizon = cfg.horizon;
      gen.format = cfg.format;
      run_generate(gen);
      digit_bytes.push_back(read_file_bytes(out));
      meta_bytes.push_back(read_file_bytes(out + ".meta.json"));
      if (cfg.analyze) {
        AnalyzeConfig an;
        an.in_path = out;
        an.horizon = cfg.horizon;
        csv_bytes.push_back(run_analyze(an));
      }
    }
    if (digit_bytes[0] != digit_bytes[1] || meta_bytes[0] != meta_bytes[1])
      return {10, "byte determinism", false,
              std::string("config \"") + cfg.name + "\": reruns differ"};
    if (cfg.analyze && csv_bytes[0] != csv_bytes[1])
      return {10, "byte determinism", false,
              std::string("config \"") + cfg.name + "\": CSV reruns differ"};
    detail += std::string(detail.empty() ? "" : ", ") + cfg.name + " fnv1a=" +
              std::to_string(fnv1a(digit_bytes[0]));
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  return {10, "byte determinism", true, detail + " (" + elapsed_str(start) + ")"};
}

}  // namespace verify_detail

inline std::vector<CriterionResult> run_all_criteria(const VerifyOptions& options,
                                                     std::ostream* progress = nullptr) {
  using namespace verify_detail;
  std::vector<CriterionResult> results;
  auto emit = [&](CriterionResult r) {
    if (progress)
      (*progress) << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name
                  << " — " << r.detail << "\n"
                  << std::flush;
    results.push_back(std::move(r));
  };

  const SharedRuns runs = shared_runs(options);
  emit(criterion_system1(runs));
  emit(criterion_recovery(options.seed));
  emit(criterion_mean_pinning(options));
  emit(criterion_theta2(options));
  emit(criterion_theta3(options));
  emit(criterion_squeeze(runs, options));
  emit(criterion_permutation(options));
  emit(criterion_crossover(options.seed));
  emit(criterion_box_count(options));
  emit(criterion_determinism(options));

  if (progress) {
    int passed = 0;
    for (const auto& r : results) passed += r.passed ? 1 : 0;
    (*progress) << passed << "/" << results.size() << " criteria passed\n";
  }
  return results;
}

}  // namespace adic
