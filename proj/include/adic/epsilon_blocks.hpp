#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adic/common.hpp"
#include "adic/digits.hpp"
#include "adic/oscillator.hpp"
#include "adic/rational.hpp"
#include "adic/stochastic.hpp"

namespace adic {

// Source of the marker bits that head each k-digit block.
class EpsilonBits {
 public:
  static EpsilonBits literal(std::string bits) {
    check01(bits);
    if (bits.empty()) throw SpecError("literal epsilon bits must be nonempty");
    EpsilonBits e;
    e.kind_ = Kind::Literal;
    e.bits_ = std::move(bits);
    return e;
  }

  static EpsilonBits periodic(std::string pattern) {
    check01(pattern);
    if (pattern.empty()) throw SpecError("periodic epsilon pattern must be nonempty");
    EpsilonBits e;
    e.kind_ = Kind::Periodic;
    e.bits_ = std::move(pattern);
    return e;
  }

  static EpsilonBits seeded(std::uint64_t seed) {
    EpsilonBits e;
    e.kind_ = Kind::Seeded;
    e.seed_ = seed;
    return e;
  }

  static EpsilonBits zeros() { return periodic("0"); }
  static EpsilonBits ones() { return periodic("1"); }

  // 1-based block index.
  int at(std::uint64_t block) const {
    if (block == 0) throw std::domain_error("block indices are 1-based");
    switch (kind_) {
      case Kind::Literal:
        if (block > bits_.size())
          throw SpecError("literal epsilon bits exhausted at block " +
                          std::to_string(block));
        return bits_[block - 1] - '0';
      case Kind::Periodic:
        return bits_[(block - 1) % bits_.size()] - '0';
      case Kind::Seeded:
        return seeded_bit(seed_, block) ? 1 : 0;
    }
    return 0;
  }

 private:
  static void check01(const std::string& s) {
    for (char c : s)
      if (c != '0' && c != '1') throw SpecError("epsilon bits must be '0' or '1'");
  }

  enum class Kind { Literal, Periodic, Seeded };
  Kind kind_ = Kind::Seeded;
  std::string bits_;
  std::uint64_t seed_ = 0;
};

struct EpsilonConfig {
  std::uint64_t k = 0;                   // block length; 0 = search upward
  std::uint64_t k_min = 64;
  std::uint64_t k_search_limit = 4096;   // inclusive upper bound for the search
  std::uint64_t validation_blocks = 10000;
  EpsilonBits eps = EpsilonBits::seeded(1);
  std::optional<Rational> delta;         // schedule slack; default gap/4
};

namespace detail {

// Shared machinery of the two epsilon-block constructions.  Block i (1-based)
// is emitted as:  eps_i, x_i zeros, y_i ones, z_i twos, t_i threes, where
//   x_i = ⌊a k (i+1)⌋ − ⌊a k i⌋ − r_i          (a = active 0-count driver)
//   t_i = ⌊b k (i+1)⌋ − ⌊b k i⌋ − corr_i       (b = active 3-count driver)
//   x_i + y_i + z_i + t_i = k − 1
//   y_i + 2 z_i + 3 t_i  = ⌊θ k (i+1)⌋ − ⌊θ k i⌋
// with r_i = 1 − eps_i.  The two-regime schedule switches when the tracked
// relative counts cross (high − δ) from below or (low + δ) from above.
class EpsilonBlockSource final : public DigitSource {
 public:
  struct Regime {
    Rational zero_driver;   // a: drives the digit-0 count
    Rational three_driver;  // b: drives the digit-3 count
  };

  // three_corrected: the 3-run count also takes a per-block ±1 correction
  // (the both-oscillate mode); otherwise only the 0-run does.
  EpsilonBlockSource(Rational theta, std::uint64_t k, Regime high, Regime low,
                     bool three_corrected, bool track_zero, bool track_three,
                     Rational delta_zero, Rational delta_three, EpsilonBits eps)
      : theta_(std::move(theta)),
        k_(k),
        high_(std::move(high)),
        low_(std::move(low)),
        three_corrected_(three_corrected),
        track_zero_(track_zero),
        track_three_(track_three),
        delta_zero_(std::move(delta_zero)),
        delta_three_(std::move(delta_three)),
        eps_(std::move(eps)),
        single_regime_(high_.zero_driver == low_.zero_driver &&
                       high_.three_driver == low_.three_driver),
        pos_in_block_(k) {}

  int next() override {
    if (pos_in_block_ == k_) plan_next_block();
    const int d = block_[pos_in_block_++];
    ++position_;
    return d;
  }

  const std::vector<std::uint64_t>* boundaries() const override { return &boundaries_; }
  const std::vector<std::uint64_t>* switch_marks() const override { return &marks_; }

  // Count arithmetic only; used by the feasibility search before any digits
  // are emitted.  Returns the failing variable name, or nullptr.
  static const char* infeasibility(const Rational& theta, std::uint64_t k,
                                   const Regime& regime, bool three_corrected,
                                   std::uint64_t block, int eps_bit) {
    const auto counts = solve_block(theta, k, regime, three_corrected, block, eps_bit);
    if (counts[0] < 0) return "x (0-run)";
    if (counts[1] < 0) return "y (1-run)";
    if (counts[2] < 0) return "z (2-run)";
    if (counts[3] < 0) return "t (3-run)";
    return nullptr;
  }

 private:
  static std::array<std::int64_t, 4> solve_block(const Rational& theta,
                                                 std::uint64_t k, const Regime& regime,
                                                 bool three_corrected,
                                                 std::uint64_t block, int eps_bit) {
    const std::int64_t r = eps_bit ? 0 : 1;
    const std::int64_t r_tilde = eps_bit ? 1 : 0;
    const std::int64_t x = floor_diff(regime.zero_driver, k, block) - r;
    const std::int64_t t = floor_diff(regime.three_driver, k, block) -
                           (three_corrected ? r_tilde : 0);
    const std::int64_t dtheta = floor_diff(theta, k, block);
    const std::int64_t a = static_cast<std::int64_t>(k) - 1 - x - t;
    const std::int64_t b = dtheta - 3 * t;
    const std::int64_t z = b - a;
    const std::int64_t y = 2 * a - b;
    return {x, y, z, t};
  }

  static std::int64_t floor_diff(const Rational& p, std::uint64_t k, std::uint64_t i) {
    return floor_scaled(p, k * (i + 1)) - floor_scaled(p, k * i);
  }

  void plan_next_block() {
    ++block_index_;
    const Regime& active = high_phase_ ? high_ : low_;
    const int eps_bit = eps_.at(block_index_);
    const auto counts = solve_block(theta_, k_, active, three_corrected_,
                                    block_index_, eps_bit);
    for (int v = 0; v < 4; ++v)
      if (counts[static_cast<std::size_t>(v)] < 0)
        throw SpecError("negative block solution at block " +
                        std::to_string(block_index_) + " (" +
                        (high_phase_ ? "high" : "low") + " regime, variable " +
                        "xyzt"[static_cast<std::size_t>(v)] + std::string(")"));
    block_.clear();
    block_.reserve(k_);
    block_.push_back(eps_bit);
    for (int d = 0; d < 4; ++d)
      block_.insert(block_.end(),
                    static_cast<std::size_t>(counts[static_cast<std::size_t>(d)]), d);
    if (block_.size() != k_)
      throw std::logic_error("epsilon block is not exactly k digits");
    pos_in_block_ = 0;
    boundaries_.push_back(position_ + k_);

    // Cumulative driven counts, then the run-length schedule.
    zeros_ += static_cast<std::uint64_t>(counts[0]) + (eps_bit == 0 ? 1 : 0);
    threes_ += static_cast<std::uint64_t>(counts[3]);
    if (!single_regime_) update_schedule();
  }

  void update_schedule() {
    const Rational n(static_cast<std::int64_t>(k_ * block_index_));
    if (!crossed_zero_ && track_zero_)
      crossed_zero_ = crossed(Rational(static_cast<std::int64_t>(zeros_)) / n,
                              high_.zero_driver, low_.zero_driver, delta_zero_);
    if (!crossed_three_ && track_three_)
      crossed_three_ = crossed(Rational(static_cast<std::int64_t>(threes_)) / n,
                               high_.three_driver, low_.three_driver, delta_three_);
    if ((crossed_zero_ || !track_zero_) && (crossed_three_ || !track_three_)) {
      high_phase_ = !high_phase_;
      crossed_zero_ = crossed_three_ = false;
      marks_.push_back(position_ + k_);
    }
  }

  bool crossed(const Rational& value, const Rational& p_hi, const Rational& p_lo,
               const Rational& delta) const {
    const Rational hi = max(p_hi, p_lo), lo = min(p_hi, p_lo);
    return high_phase_ ? value > hi - delta : value < lo + delta;
  }

  Rational theta_;
  std::uint64_t k_;
  Regime high_, low_;
  bool three_corrected_;
  bool track_zero_, track_three_;
  Rational delta_zero_, delta_three_;
  EpsilonBits eps_;
  bool single_regime_;

  std::uint64_t block_index_ = 0;
  std::uint64_t position_ = 0;
  std::vector<int> block_;
  std::uint64_t pos_in_block_;  // starts at k_ so the first next() plans
  std::uint64_t zeros_ = 0, threes_ = 0;
  bool high_phase_ = true;
  bool crossed_zero_ = false, crossed_three_ = false;
  std::vector<std::uint64_t> boundaries_;
  std::vector<std::uint64_t> marks_;
};

inline std::uint64_t search_block_length(
    const Rational& theta, const std::vector<EpsilonBlockSource::Regime>& regimes,
    bool three_corrected, const EpsilonConfig& cfg) {
  const std::uint64_t lo = cfg.k ? cfg.k : cfg.k_min;
  const std::uint64_t hi = cfg.k ? cfg.k : cfg.k_search_limit;
  std::string first_failure;
  for (std::uint64_t k = lo; k <= hi; ++k) {
    bool ok = true;
    for (std::uint64_t block = 1; block <= cfg.validation_blocks && ok; ++block)
      for (const auto& regime : regimes)
        for (int eps_bit : {0, 1}) {
          if (const char* bad = EpsilonBlockSource::infeasibility(
                  theta, k, regime, three_corrected, block, eps_bit)) {
            ok = false;
            if (first_failure.empty())
              first_failure = "k = " + std::to_string(k) + " fails at block " +
                              std::to_string(block) + ", variable " + bad +
                              ", eps = " + std::to_string(eps_bit);
            break;
          }
        }
    if (ok) return k;
  }
  throw SpecError("k too small: no feasible block length in [" + std::to_string(lo) +
                  ", " + std::to_string(hi) + "]; first failure: " + first_failure);
}

inline DigitStream make_epsilon_stream(const Rational& theta,
                                       EpsilonBlockSource::Regime high,
                                       EpsilonBlockSource::Regime low,
                                       bool three_corrected, bool track_zero,
                                       bool track_three, Rational delta_zero,
                                       Rational delta_three, const EpsilonConfig& cfg,
                                       std::uint64_t k) {
  auto src = std::make_unique<EpsilonBlockSource>(
      theta, k, std::move(high), std::move(low), three_corrected, track_zero,
      track_three, std::move(delta_zero), std::move(delta_three), cfg.eps);
  return DigitStream(kBase4, std::move(src));
}

}  // namespace detail

// Epsilon-block stream in which the digit-0 count is pinned to the shared
// first coordinate and the digit-3 count follows the two-regime schedule
// (the other counts solve the block system).  With p == q the schedule is
// inert and all four frequencies converge to p.
inline DigitStream epsilon_theta2_stream(const StochasticVector& p,
                                         const StochasticVector& q,
                                         const Rational& theta,
                                         const EpsilonConfig& cfg = {}) {
  if (p.size() != 4 || q.size() != 4)
    throw SpecError("epsilon block vectors must have four entries");
  if (theta <= Rational(0) || theta >= Rational(3))
    throw SpecError("epsilon block construction requires 0 < theta < 3");
  if (p.mean() != theta)
    throw SpecError("epsilon block vector p has mean " + p.mean().str() +
                    ", expected " + theta.str());
  if (q.mean() != theta)
    throw SpecError("epsilon block vector q has mean " + q.mean().str() +
                    ", expected " + theta.str());
  const bool single = p == q;
  if (!single) {
    if (p[0] != q[0]) throw SpecError("epsilon block construction requires p0 = q0");
    if (p[1] == q[1]) throw SpecError("epsilon block construction requires p1 != q1");
  }
  if (p[0] <= Rational(0)) throw SpecError("epsilon block construction requires p0 > 0");

  // Regime high carries the larger 3-coordinate.
  const StochasticVector& hi = (p[3] >= q[3]) ? p : q;
  const StochasticVector& lo = (p[3] >= q[3]) ? q : p;
  detail::EpsilonBlockSource::Regime high{hi[0], hi[3]};
  detail::EpsilonBlockSource::Regime low{lo[0], lo[3]};
  const Rational gap = abs(p[3] - q[3]);
  const Rational delta = cfg.delta ? *cfg.delta : gap / Rational(4);
  if (!single && (delta <= Rational(0) || delta >= gap / Rational(2)))
    throw SpecError("epsilon schedule delta must lie in (0, gap/2)");
  const std::uint64_t k = detail::search_block_length(theta, {high, low},
                                                      /*three_corrected=*/false, cfg);
  return detail::make_epsilon_stream(theta, high, low, /*three_corrected=*/false,
                                     /*track_zero=*/false, /*track_three=*/!single,
                                     Rational(0), delta, cfg, k);
}

// Epsilon-block stream in which both the digit-0 and the digit-3 counts are
// driven by oscillating parameter pairs, so no digit frequency converges.
inline DigitStream epsilon_theta3_stream(const RegimePair& zero_drivers,
                                         const RegimePair& three_drivers,
                                         const Rational& theta,
                                         const EpsilonConfig& cfg = {}) {
  if (theta <= Rational(0) || theta >= Rational(3))
    throw SpecError("epsilon block construction requires 0 < theta < 3");
  if (zero_drivers.low() <= Rational(0) || three_drivers.low() <= Rational(0))
    throw SpecError("epsilon block drivers must be positive");
  const bool single = zero_drivers.degenerate() && three_drivers.degenerate();
  if (!single && (zero_drivers.degenerate() || three_drivers.degenerate()))
    throw SpecError("epsilon block drivers must both oscillate (or both be fixed)");
  // Asymptotic feasibility of all four regime corners: the implied column is
  // (a, 2-theta-2a+b, theta-1+a-2b, b).
  for (const Rational& a : {zero_drivers.high(), zero_drivers.low()})
    for (const Rational& b : {three_drivers.high(), three_drivers.low()}) {
      const Rational y = Rational(2) - theta - Rational(2) * a + b;
      const Rational z = theta - Rational(1) + a - Rational(2) * b;
      if (y < Rational(0) || z < Rational(0))
        throw SpecError("incompatible drivers: corner (a=" + a.str() + ", b=" +
                        b.str() + ") gives y=" + y.str() + ", z=" + z.str());
    }

  detail::EpsilonBlockSource::Regime high{zero_drivers.high(), three_drivers.high()};
  detail::EpsilonBlockSource::Regime low{zero_drivers.low(), three_drivers.low()};
  const Rational dz = cfg.delta ? *cfg.delta : zero_drivers.gap() / Rational(4);
  const Rational dt = cfg.delta ? *cfg.delta : three_drivers.gap() / Rational(4);
  const std::uint64_t k = detail::search_block_length(theta, {high, low},
                                                      /*three_corrected=*/true, cfg);
  return detail::make_epsilon_stream(theta, high, low, /*three_corrected=*/true,
                                     /*track_zero=*/!single, /*track_three=*/!single,
                                     dz, dt, cfg, k);
}

// ---------------------------------------------------------------------------
// Block permutations.

class BlockPermutation {
 public:
  static BlockPermutation identity() { return BlockPermutation{}; }

  static BlockPermutation seeded(std::uint64_t seed) {
    BlockPermutation p;
    p.kind_ = Kind::Seeded;
    p.seed_ = seed;
    return p;
  }

  static BlockPermutation reverse() {
    BlockPermutation p;
    p.kind_ = Kind::Reverse;
    return p;
  }

  // Explicit rearranged content (the permutable slice only) per block index.
  static BlockPermutation explicit_blocks(std::map<std::uint64_t, std::vector<int>> blocks) {
    BlockPermutation p;
    p.kind_ = Kind::Explicit;
    p.blocks_ = std::move(blocks);
    return p;
  }

  // Rearranges digits[from..end) in place; digits before `from` are fixed.
  void apply(std::vector<int>& digits, std::size_t from, std::uint64_t block) const {
    switch (kind_) {
      case Kind::Identity:
        return;
      case Kind::Reverse:
        std::reverse(digits.begin() + static_cast<std::ptrdiff_t>(from), digits.end());
        return;
      case Kind::Seeded: {
        SplitMix64 rng(seed_ ^ (block * 0x9e3779b97f4a7c15ull + 0xd1b54a32d192ed03ull));
        for (std::size_t i = digits.size() - 1; i > from; --i) {
          const std::size_t j =
              from + static_cast<std::size_t>(rng.below(i - from + 1));
          std::swap(digits[i], digits[j]);
        }
        return;
      }
      case Kind::Explicit: {
        const auto it = blocks_.find(block);
        if (it == blocks_.end()) return;
        const std::vector<int>& replacement = it->second;
        if (replacement.size() != digits.size() - from)
          throw SpecError("block " + std::to_string(block) +
                          " rearrangement has the wrong length");
        std::vector<int> a(digits.begin() + static_cast<std::ptrdiff_t>(from),
                           digits.end());
        std::vector<int> b = replacement;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b)
          throw SpecError("block " + std::to_string(block) +
                          " rearrangement changes the digit multiset");
        std::copy(replacement.begin(), replacement.end(),
                  digits.begin() + static_cast<std::ptrdiff_t>(from));
        return;
      }
    }
  }

 private:
  enum class Kind { Identity, Seeded, Reverse, Explicit };
  Kind kind_ = Kind::Identity;
  std::uint64_t seed_ = 0;
  std::map<std::uint64_t, std::vector<int>> blocks_;
};

namespace detail {

class PermutedBlockSource final : public DigitSource {
 public:
  PermutedBlockSource(DigitStream base, BlockPermutation permutation, bool fix_first)
      : base_(std::move(base)), permutation_(std::move(permutation)),
        fix_first_(fix_first) {
    if (base_.boundaries() == nullptr)
      throw SpecError("permute_blocks needs a block-structured base stream");
  }

  int next() override {
    if (served_ == buffer_.size()) load_next_block();
    ++position_;
    return buffer_[served_++];
  }

  const std::vector<std::uint64_t>* boundaries() const override {
    return base_.boundaries();
  }
  const std::vector<std::uint64_t>* switch_marks() const override {
    return base_.switch_marks();
  }

 private:
  void load_next_block() {
    buffer_.clear();
    served_ = 0;
    // Pull one digit so the base plans its next block and logs the boundary.
    buffer_.push_back(base_.next());
    ++block_index_;
    const auto& bounds = *base_.boundaries();
    // Find the end of the block containing the digit just consumed.
    std::uint64_t end = 0;
    for (auto it = bounds.rbegin(); it != bounds.rend(); ++it) {
      if (*it >= base_.position()) end = *it;
      if (*it < base_.position()) break;
    }
    if (end == 0) throw std::logic_error("base stream lost its block boundary");
    while (base_.position() < end) buffer_.push_back(base_.next());
    permutation_.apply(buffer_, fix_first_ ? 1 : 0, block_index_);
  }

  DigitStream base_;
  BlockPermutation permutation_;
  bool fix_first_;
  std::vector<int> buffer_;
  std::size_t served_ = 0;
  std::uint64_t position_ = 0;
  std::uint64_t block_index_ = 0;
};

}  // namespace detail

// Rearranges digits inside each block of a block-structured stream.  With
// fix_first = true the leading (epsilon) digit of every block stays put.
// Counts at block boundaries are invariant because rearrangement preserves
// each block's digit multiset.
inline DigitStream permute_blocks(const StreamFactory& base_factory,
                                  BlockPermutation permutation,
                                  bool fix_first = true) {
  return DigitStream(kBase4, std::make_unique<detail::PermutedBlockSource>(
                                 base_factory(), std::move(permutation), fix_first));
}

}  // namespace adic
