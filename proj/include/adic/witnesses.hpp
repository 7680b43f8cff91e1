#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "adic/blocks.hpp"
#include "adic/common.hpp"
#include "adic/digits.hpp"
#include "adic/oscillator.hpp"
#include "adic/rational.hpp"
#include "adic/schedule.hpp"
#include "adic/stochastic.hpp"

namespace adic {

namespace detail {

// Block emitter whose column for block k is chosen by a greedy oscillator.
// Exposes block boundaries and the digit positions of regime switches.
class OscillatingBlockSource final : public DigitSource {
 public:
  using ColumnRule = std::function<StochasticVector(const Rational&, const Rational&)>;

  OscillatingBlockSource(GreedyOscillator osc, LengthSchedule lengths,
                         ColumnRule column)
      : osc_(std::move(osc)), lengths_(std::move(lengths)), column_(std::move(column)) {}

  int next() override {
    while (run_ == 4) plan_next_block();
    while (remaining_[run_] == 0) {
      ++run_;
      if (run_ == 4) return next();
    }
    --remaining_[run_];
    ++position_;
    return run_;
  }

  const std::vector<std::uint64_t>* boundaries() const override { return &boundaries_; }
  const std::vector<std::uint64_t>* switch_marks() const override { return &marks_; }

 private:
  void plan_next_block() {
    std::uint64_t empty_streak = 0;
    for (;;) {
      const auto [va, vb] = osc_.step();
      const std::uint64_t k = osc_.block_index();
      const std::uint64_t s = lengths_.at(k);
      const StochasticVector tau = column_(va, vb);
      std::uint64_t total = 0;
      for (int d = 0; d < 4; ++d) {
        remaining_[d] =
            static_cast<std::uint64_t>(floor_scaled(tau[static_cast<std::size_t>(d)], s));
        total += remaining_[d];
      }
      boundaries_.push_back(position_ + total);
      if (osc_.switched_on_last_step()) marks_.push_back(position_ + total);
      if (total > 0) {
        run_ = 0;
        return;
      }
      if (++empty_streak >= kEmptyBlockLimit)
        throw SpecError("witness block plan stalled at block " + std::to_string(k));
    }
  }

  GreedyOscillator osc_;
  LengthSchedule lengths_;
  ColumnRule column_;
  std::uint64_t position_ = 0;
  std::array<std::uint64_t, 4> remaining_{};
  int run_ = 4;
  std::vector<std::uint64_t> boundaries_;
  std::vector<std::uint64_t> marks_;
};

inline void check_theta_open_interval(const Rational& theta, const char* who) {
  if (theta <= Rational(0) || theta >= Rational(3))
    throw SpecError(std::string(who) +
                    " requires 0 < theta < 3; at the boundary no such stream exists");
}

}  // namespace detail

struct Theta2Params {
  Rational theta;
  StochasticVector p;
  StochasticVector q;
  LengthSchedule lengths = LengthSchedule::linear();
  std::optional<Rational> epsilon;              // default |p1 − q1| / 4
  std::uint64_t validation_blocks = 1024;       // schedule growth check horizon
};

// Stream whose mean tends to theta and whose digit-0 frequency tends to the
// shared p0 = q0, while the frequency of digit 1 (with 2 and 3 in tow)
// follows the oscillating regime and never settles.
inline DigitStream theta2_witness(const Theta2Params& params) {
  detail::check_theta_open_interval(params.theta, "theta2 witness");
  const StochasticVector& p = params.p;
  const StochasticVector& q = params.q;
  if (p.size() != 4 || q.size() != 4)
    throw SpecError("theta2 witness vectors must have four entries");
  if (p[0] != q[0]) throw SpecError("theta2 witness requires p0 = q0");
  if (p[0] <= Rational(0)) throw SpecError("theta2 witness requires p0 > 0");
  if (p[1] == q[1]) throw SpecError("theta2 witness requires p1 != q1");
  if (p.mean() != params.theta)
    throw SpecError("theta2 witness: p has mean " + p.mean().str() + ", expected " +
                    params.theta.str());
  if (q.mean() != params.theta)
    throw SpecError("theta2 witness: q has mean " + q.mean().str() + ", expected " +
                    params.theta.str());
  // The column completion for regime value a is (p0, a, 3-3p0-theta-2a,
  // theta+a-2+2p0); with the preconditions above it lands exactly on p or q,
  // so negativity cannot occur.  Checked anyway to honor the contract.
  for (const StochasticVector* v : {&p, &q})
    for (std::size_t i = 0; i < 4; ++i)
      if ((*v)[i] < Rational(0)) throw SpecError("incompatible vectors");
  params.lengths.validate(params.validation_blocks);

  const Rational eps = params.epsilon ? *params.epsilon
                                      : abs(p[1] - q[1]) / Rational(4);
  GreedyOscillator osc({p[1], q[1]}, {p[1], q[1]}, eps, params.lengths);
  auto column = [p, q](const Rational& a, const Rational&) {
    return a == p[1] ? p : q;
  };
  return DigitStream(kBase4, std::make_unique<detail::OscillatingBlockSource>(
                                 std::move(osc), params.lengths, column));
}

struct Theta3Params {
  Rational theta;
  Rational p0, q0;  // regime pair for coordinate 0
  Rational p1, q1;  // regime pair for coordinate 1
  LengthSchedule lengths = LengthSchedule::linear();
  std::optional<Rational> epsilon;              // default min(gap0, gap1) / 4
  std::uint64_t validation_blocks = 1024;
};

// Stream whose mean tends to theta while the frequencies of digits 0 and 1
// (hence of 2 and 3 as well) oscillate between their two regime values.
inline DigitStream theta3_witness(const Theta3Params& params) {
  detail::check_theta_open_interval(params.theta, "theta3 witness");
  if (!(params.p0 > params.q0 && params.q0 > Rational(0)))
    throw SpecError("theta3 witness requires p0 > q0 > 0");
  if (!(params.p1 > params.q1 && params.q1 > Rational(0)))
    throw SpecError("theta3 witness requires p1 > q1 > 0");
  // Every regime combination must complete to a non-negative column via
  //   tau2 = 3 - theta - 3 tau0 - 2 tau1,  tau3 = theta - 2 + 2 tau0 + tau1.
  for (const Rational& t0 : {params.p0, params.q0})
    for (const Rational& t1 : {params.p1, params.q1}) {
      try {
        complete_column(params.theta, t0, t1);
      } catch (const SpecError& e) {
        throw SpecError("incompatible vectors: regime (tau0=" + t0.str() +
                        ", tau1=" + t1.str() + "): " + e.what());
      }
    }
  params.lengths.validate(params.validation_blocks);

  const RegimePair pair0{params.p0, params.q0};
  const RegimePair pair1{params.p1, params.q1};
  const Rational eps = params.epsilon
                           ? *params.epsilon
                           : min(pair0.gap(), pair1.gap()) / Rational(4);
  GreedyOscillator osc(pair0, pair1, eps, params.lengths);
  const Rational theta = params.theta;
  auto column = [theta](const Rational& a, const Rational& b) {
    return complete_column(theta, a, b);
  };
  return DigitStream(kBase4, std::make_unique<detail::OscillatingBlockSource>(
                                 std::move(osc), params.lengths, column));
}

}  // namespace adic
