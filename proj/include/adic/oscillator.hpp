#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "adic/common.hpp"
#include "adic/rational.hpp"
#include "adic/schedule.hpp"

namespace adic {

// An unordered two-value regime.
struct RegimePair {
  Rational first;
  Rational second;

  Rational high() const { return max(first, second); }
  Rational low() const { return min(first, second); }
  Rational gap() const { return abs(first - second); }
  bool degenerate() const { return first == second; }
};

// Run-length alternation of two regime pairs over a length schedule.  Blocks
// carry weight s_k; the running ratios Σ⌊a_i s_i⌋ / Σ s_i and Σ⌊b_i s_i⌋ / Σ s_i
// chase the high values until both exceed (high − ε), then the low values
// until both drop under (low + ε), and so on.  Both sequences share their
// switch indices, so the alternation never settles and the two ratios keep a
// gap of at least (high − low − 2ε) between consecutive extremes.
class GreedyOscillator {
 public:
  GreedyOscillator(RegimePair a, RegimePair b, Rational epsilon,
                   LengthSchedule lengths)
      : a_(a), b_(b), epsilon_(epsilon), lengths_(std::move(lengths)) {
    if (a_.degenerate())
      throw SpecError("oscillator regime values must differ (first pair)");
    if (b_.degenerate())
      throw SpecError("oscillator regime values must differ (second pair)");
    if (epsilon_ <= Rational(0))
      throw SpecError("oscillator epsilon must be positive");
    if (epsilon_ >= a_.gap() / Rational(2) || epsilon_ >= b_.gap() / Rational(2))
      throw SpecError("oscillator epsilon too large: need epsilon < gap/2 for both pairs");
  }

  // Consumes one block; returns the regime values (a_k, b_k) used for it.
  std::pair<Rational, Rational> step() {
    ++block_;
    const std::uint64_t s = lengths_.at(block_);
    const Rational va = high_phase_ ? a_.high() : a_.low();
    const Rational vb = high_phase_ ? b_.high() : b_.low();
    sum_a_ += floor_scaled(va, s);
    sum_b_ += floor_scaled(vb, s);
    total_ += s;
    if (!crossed_a_) crossed_a_ = crossed(sum_a_, a_);
    if (!crossed_b_) crossed_b_ = crossed(sum_b_, b_);
    if (crossed_a_ && crossed_b_) {
      switches_.push_back(block_);
      high_phase_ = !high_phase_;
      crossed_a_ = crossed_b_ = false;
    }
    return {va, vb};
  }

  std::uint64_t block_index() const { return block_; }
  bool high_phase() const { return high_phase_; }
  bool switched_on_last_step() const {
    return !switches_.empty() && switches_.back() == block_;
  }
  const std::vector<std::uint64_t>& switch_indices() const { return switches_; }
  Rational ratio_a() const {
    return Rational(sum_a_, static_cast<std::int64_t>(total_));
  }
  Rational ratio_b() const {
    return Rational(sum_b_, static_cast<std::int64_t>(total_));
  }

 private:
  bool crossed(std::int64_t sum, const RegimePair& pair) const {
    // high phase: sum/total > high − ε;  low phase: sum/total < low + ε.
    const Rational threshold =
        high_phase_ ? pair.high() - epsilon_ : pair.low() + epsilon_;
    const int128 lhs = static_cast<int128>(sum) * threshold.den();
    const int128 rhs = static_cast<int128>(threshold.num()) * static_cast<int128>(total_);
    return high_phase_ ? lhs > rhs : lhs < rhs;
  }

  RegimePair a_, b_;
  Rational epsilon_;
  LengthSchedule lengths_;
  std::uint64_t block_ = 0;
  std::int64_t sum_a_ = 0, sum_b_ = 0;
  std::uint64_t total_ = 0;
  bool high_phase_ = true;
  bool crossed_a_ = false, crossed_b_ = false;
  std::vector<std::uint64_t> switches_;
};

struct GreedyRun {
  std::vector<Rational> a;                  // regime value per block, 1-based shifted
  std::vector<Rational> b;
  std::vector<std::uint64_t> switches;      // block indices ending each phase
  std::vector<Rational> ratio_a;            // Σ⌊a_i s_i⌋ / Σ s_i after each block
  std::vector<Rational> ratio_b;
};

class HorizonExhausted : public SpecError {
 public:
  HorizonExhausted(std::uint64_t phase, GreedyRun partial)
      : SpecError("horizon exhausted at phase " + std::to_string(phase)),
        phase(phase),
        partial(std::move(partial)) {}

  std::uint64_t phase;
  GreedyRun partial;
};

// Materialized run over `horizon` blocks.  Requires at least `min_switches`
// completed phases; otherwise throws HorizonExhausted carrying the partial
// sequences.
inline GreedyRun greedy_oscillator(const LengthSchedule& lengths, Rational alpha1,
                                   Rational alpha2, Rational beta1, Rational beta2,
                                   Rational epsilon, std::uint64_t horizon,
                                   std::uint64_t min_switches = 1) {
  if (horizon == 0) throw SpecError("oscillator horizon must be positive");
  lengths.validate(horizon);
  GreedyOscillator osc({alpha1, alpha2}, {beta1, beta2}, epsilon, lengths);
  GreedyRun run;
  run.a.reserve(horizon);
  run.b.reserve(horizon);
  for (std::uint64_t k = 1; k <= horizon; ++k) {
    const auto [va, vb] = osc.step();
    run.a.push_back(va);
    run.b.push_back(vb);
    run.ratio_a.push_back(osc.ratio_a());
    run.ratio_b.push_back(osc.ratio_b());
  }
  run.switches = osc.switch_indices();
  if (run.switches.size() < min_switches)
    throw HorizonExhausted(run.switches.size() + 1, std::move(run));
  return run;
}

}  // namespace adic
