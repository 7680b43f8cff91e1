#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "adic/common.hpp"
#include "adic/digits.hpp"
#include "adic/rational.hpp"
#include "adic/schedule.hpp"
#include "adic/stochastic.hpp"

namespace adic {

// Column-driven block construction: block k consists of ⌊τ0k·sk⌋ zeros,
// ⌊τ1k·sk⌋ ones, ⌊τ2k·sk⌋ twos, ⌊τ3k·sk⌋ threes.
struct BlockPlan {
  std::function<StochasticVector(std::uint64_t)> column;  // 1-based block index
  LengthSchedule lengths;
};

namespace detail {

// Floors can wipe out an entire early block (s_k small, all entries < 1/s_k).
// Those blocks contribute nothing and are skipped; a plan that stays empty
// this long cannot make progress and is rejected.
inline constexpr std::uint64_t kEmptyBlockLimit = 1 << 20;

class BlockSource final : public DigitSource {
 public:
  explicit BlockSource(BlockPlan plan) : plan_(std::move(plan)) {
    if (!plan_.column) throw SpecError("block plan has no column generator");
  }

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

  const std::vector<std::uint64_t>* boundaries() const override {
    return &boundaries_;
  }

 private:
  void plan_next_block() {
    std::uint64_t empty_streak = 0;
    for (;;) {
      ++block_;
      const std::uint64_t s = plan_.lengths.at(block_);
      const StochasticVector tau = plan_.column(block_);
      if (tau.size() != 4)
        throw SpecError("block columns must have exactly four entries");
      std::uint64_t total = 0;
      for (int d = 0; d < 4; ++d) {
        const std::int64_t r = floor_scaled(tau[static_cast<std::size_t>(d)], s);
        remaining_[d] = static_cast<std::uint64_t>(r);
        total += remaining_[d];
      }
      boundaries_.push_back(position_ + total);
      if (total > 0) {
        run_ = 0;
        return;
      }
      if (++empty_streak >= kEmptyBlockLimit)
        throw SpecError("block plan stalled: " + std::to_string(empty_streak) +
                        " consecutive empty blocks at block " + std::to_string(block_));
    }
  }

  BlockPlan plan_;
  std::uint64_t block_ = 0;
  std::uint64_t position_ = 0;
  std::array<std::uint64_t, 4> remaining_{};
  int run_ = 4;
  std::vector<std::uint64_t> boundaries_;
};

}  // namespace detail

inline DigitStream block_number(BlockPlan plan) {
  return DigitStream(kBase4, std::make_unique<detail::BlockSource>(std::move(plan)));
}

inline BlockPlan constant_plan(StochasticVector tau, LengthSchedule lengths) {
  return BlockPlan{[tau = std::move(tau)](std::uint64_t) { return tau; },
                   std::move(lengths)};
}

// Distinct block end positions within the first `digit_horizon` digits.
inline std::vector<std::uint64_t> block_boundaries(const StreamFactory& factory,
                                                   std::uint64_t digit_horizon) {
  DigitStream probe = factory();
  probe.advance_to(digit_horizon);
  std::vector<std::uint64_t> out;
  if (const auto* b = probe.boundaries()) {
    for (std::uint64_t pos : *b)
      if (pos >= 1 && pos <= digit_horizon && (out.empty() || pos != out.back()))
        out.push_back(pos);
  }
  return out;
}

}  // namespace adic
