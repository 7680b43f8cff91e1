#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "adic/common.hpp"
#include "adic/digits.hpp"
#include "adic/rational.hpp"
#include "adic/stochastic.hpp"

namespace adic {

// Strictly increasing prefix lengths at which statistics are sampled — the
// finite stand-in for n -> infinity.
class CheckpointLadder {
 public:
  explicit CheckpointLadder(std::vector<std::uint64_t> positions)
      : positions_(std::move(positions)) {
    if (positions_.empty()) throw SpecError("checkpoint ladder is empty");
    if (positions_.front() < 1)
      throw SpecError("checkpoint positions start at 1");
    for (std::size_t i = 1; i < positions_.size(); ++i)
      if (positions_[i] <= positions_[i - 1])
        throw SpecError("checkpoint positions must be strictly increasing");
  }

  static CheckpointLadder geometric(std::uint64_t limit, std::uint64_t first = 100,
                                    Rational ratio = Rational(3, 2)) {
    if (ratio <= Rational(1)) throw SpecError("geometric ladder ratio must exceed 1");
    std::vector<std::uint64_t> v;
    std::uint64_t n = std::min(first, limit);
    if (n == 0) throw SpecError("geometric ladder needs a positive start");
    while (n <= limit) {
      v.push_back(n);
      const std::uint64_t next = static_cast<std::uint64_t>(
          floor_scaled(ratio, n));
      n = std::max(n + 1, next);
    }
    if (v.empty() || v.back() != limit) v.push_back(limit);
    return CheckpointLadder(std::move(v));
  }

  // Sorted union, clipped to [1, limit], with `limit` appended.
  static CheckpointLadder merged(std::vector<std::uint64_t> positions,
                                 std::uint64_t limit) {
    positions.push_back(limit);
    std::sort(positions.begin(), positions.end());
    positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
    std::vector<std::uint64_t> v;
    for (std::uint64_t p : positions)
      if (p >= 1 && p <= limit) v.push_back(p);
    return CheckpointLadder(std::move(v));
  }

  const std::vector<std::uint64_t>& positions() const { return positions_; }
  std::uint64_t back() const { return positions_.back(); }

 private:
  std::vector<std::uint64_t> positions_;
};

struct TrackRow {
  std::uint64_t n = 0;
  std::vector<std::uint64_t> counts;  // N_0..N_{s-1}
  std::vector<Rational> v;            // exact frequencies
  Rational r;                         // exact mean
};

// One pass over the stream, one row per checkpoint.
inline std::vector<TrackRow> track(const StreamFactory& factory,
                                   const CheckpointLadder& ladder) {
  DigitStream stream = factory();
  std::vector<TrackRow> rows;
  rows.reserve(ladder.positions().size());
  for (std::uint64_t pos : ladder.positions()) {
    stream.advance_to(pos);
    TrackRow row;
    row.n = pos;
    row.counts = stream.stats().counts;
    for (int d = 0; d < stream.radix(); ++d)
      row.v.push_back(relative_frequency(stream.stats(), d));
    row.r = relative_mean(stream.stats());
    rows.push_back(std::move(row));
  }
  return rows;
}

enum class SeriesStatus { Converges, Oscillates };

struct SeriesVerdict {
  SeriesStatus status = SeriesStatus::Converges;
  Rational lo;        // min over the tail window
  Rational hi;        // max over the tail window
  Rational estimate;  // midpoint, meaningful when converging
  Rational band;      // hi - lo

  bool oscillates() const { return status == SeriesStatus::Oscillates; }
};

// Tail-window min/max test: oscillates when the trailing values still span
// more than delta.  A prefix-based heuristic, not a limit statement.
inline SeriesVerdict oscillation_verdict(std::span<const Rational> series,
                                         const Rational& delta,
                                         const Rational& tail_fraction = Rational(1, 2)) {
  if (series.empty()) throw std::domain_error("oscillation verdict on empty series");
  if (tail_fraction <= Rational(0) || tail_fraction > Rational(1))
    throw std::domain_error("tail fraction must lie in (0,1]");
  std::size_t tail = static_cast<std::size_t>(
      floor_scaled(tail_fraction, series.size()));
  if (tail == 0) tail = 1;
  SeriesVerdict out;
  out.lo = out.hi = series[series.size() - tail];
  for (std::size_t i = series.size() - tail; i < series.size(); ++i) {
    out.lo = min(out.lo, series[i]);
    out.hi = max(out.hi, series[i]);
  }
  out.band = out.hi - out.lo;
  out.estimate = (out.hi + out.lo) / Rational(2);
  out.status = out.band > delta ? SeriesStatus::Oscillates : SeriesStatus::Converges;
  return out;
}

enum class ClassGuess { Theta1, Theta2, Theta3, Inconsistent };

inline const char* to_string(ClassGuess g) {
  switch (g) {
    case ClassGuess::Theta1: return "Theta1";
    case ClassGuess::Theta2: return "Theta2";
    case ClassGuess::Theta3: return "Theta3";
    case ClassGuess::Inconsistent: return "inconsistent";
  }
  return "inconsistent";
}

// Empirical verdict over a finite prefix.  The parameters travel with the
// result so a verdict is reproducible and honestly labeled.
struct ConvergenceVerdict {
  std::vector<SeriesVerdict> per_digit;
  SeriesVerdict mean;
  ClassGuess guess = ClassGuess::Inconsistent;
  Rational delta;
  Rational tail_fraction;
  std::uint64_t horizon = 0;
  std::vector<std::uint64_t> ladder;

  int oscillating_digits() const {
    int c = 0;
    for (const auto& v : per_digit) c += v.oscillates() ? 1 : 0;
    return c;
  }
};

inline ConvergenceVerdict classify(const StreamFactory& factory,
                                   std::uint64_t horizon,
                                   const CheckpointLadder& ladder,
                                   const Rational& delta = Rational(1, 20),
                                   const Rational& tail_fraction = Rational(1, 2)) {
  if (ladder.back() > horizon)
    throw SpecError("checkpoint ladder exceeds the horizon");
  const std::vector<TrackRow> rows = track(factory, ladder);
  const std::size_t digits = rows.front().v.size();
  ConvergenceVerdict verdict;
  verdict.delta = delta;
  verdict.tail_fraction = tail_fraction;
  verdict.horizon = horizon;
  verdict.ladder = ladder.positions();
  std::vector<Rational> series(rows.size());
  for (std::size_t d = 0; d < digits; ++d) {
    for (std::size_t i = 0; i < rows.size(); ++i) series[i] = rows[i].v[d];
    verdict.per_digit.push_back(oscillation_verdict(series, delta, tail_fraction));
  }
  for (std::size_t i = 0; i < rows.size(); ++i) series[i] = rows[i].r;
  verdict.mean = oscillation_verdict(series, delta, tail_fraction);

  // Admissible patterns with a converging mean: zero, three, or four digit
  // frequencies oscillating.  Anything else is reported, never coerced.
  const int osc = verdict.oscillating_digits();
  if (!verdict.mean.oscillates() && osc == 0)
    verdict.guess = ClassGuess::Theta1;
  else if (!verdict.mean.oscillates() && osc == static_cast<int>(digits) - 1)
    verdict.guess = ClassGuess::Theta2;
  else if (!verdict.mean.oscillates() && osc == static_cast<int>(digits))
    verdict.guess = ClassGuess::Theta3;
  else
    verdict.guess = ClassGuess::Inconsistent;
  return verdict;
}

struct ConsistencyCheck {
  bool pass = true;
  std::string report;
};

// Consistency of an empirical verdict with the count algebra: a single
// non-existent frequency is impossible, and with a converging mean two known
// frequencies force the other two.
inline ConsistencyCheck count_consistency_check(const ConvergenceVerdict& verdict) {
  const int osc = verdict.oscillating_digits();
  if (osc == 1)
    return {false,
            "exactly one digit frequency oscillates; the count identities force a "
            "second one"};
  if (osc == 2 && !verdict.mean.oscillates())
    return {false,
            "exactly two digit frequencies oscillate under a converging mean; two "
            "known frequencies determine the rest"};
  return {true, "admissible pattern"};
}

}  // namespace adic
