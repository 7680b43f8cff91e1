#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "adic/common.hpp"
#include "adic/rational.hpp"

namespace adic {

class Alphabet {
 public:
  explicit Alphabet(int radix) : radix_(radix) {
    if (radix < 2) throw SpecError("alphabet radix must be at least 2");
  }
  int radix() const { return radix_; }
  bool contains(int digit) const { return digit >= 0 && digit < radix_; }

 private:
  int radix_;
};

inline const Alphabet kBase4{4};

// Cumulative-from-zero digit statistics of a stream prefix:
// counts[i] = N_i(x, n), digit_sum = Σ α_i, length = n.
struct PrefixStats {
  explicit PrefixStats(int radix)
      : counts(static_cast<std::size_t>(radix), 0) {}

  std::uint64_t length = 0;
  std::vector<std::uint64_t> counts;
  std::uint64_t digit_sum = 0;

  void push(int digit) {
    ++length;
    ++counts[static_cast<std::size_t>(digit)];
    digit_sum += static_cast<std::uint64_t>(digit);
  }
};

// v_i^(n) = N_i / n, exact.
inline Rational relative_frequency(const PrefixStats& stats, int digit) {
  if (stats.length == 0)
    throw std::domain_error("relative frequency of an empty prefix");
  if (digit < 0 || static_cast<std::size_t>(digit) >= stats.counts.size())
    throw std::domain_error("digit outside alphabet");
  return Rational(static_cast<std::int64_t>(stats.counts[static_cast<std::size_t>(digit)]),
                  static_cast<std::int64_t>(stats.length));
}

// r_n = (Σ α_i) / n, exact.
inline Rational relative_mean(const PrefixStats& stats) {
  if (stats.length == 0)
    throw std::domain_error("relative mean of an empty prefix");
  return Rational(static_cast<std::int64_t>(stats.digit_sum),
                  static_cast<std::int64_t>(stats.length));
}

// A digit generator.  Sources are single-consumer; determinism comes from
// rebuilding a fresh source from the same spec, never from copying state.
class DigitSource {
 public:
  virtual ~DigitSource() = default;
  virtual int next() = 0;

  // Block-structured sources expose cumulative block end positions (and, for
  // oscillating constructions, the digit positions where the regime switched)
  // as they are produced.  Others return nullptr.
  virtual const std::vector<std::uint64_t>* boundaries() const { return nullptr; }
  virtual const std::vector<std::uint64_t>* switch_marks() const { return nullptr; }
};

class DigitStream {
 public:
  DigitStream(Alphabet alphabet, std::unique_ptr<DigitSource> source)
      : alphabet_(alphabet), source_(std::move(source)), stats_(alphabet.radix()) {}

  int radix() const { return alphabet_.radix(); }
  std::uint64_t position() const { return stats_.length; }
  const PrefixStats& stats() const { return stats_; }

  int next() {
    const int d = source_->next();
    if (!alphabet_.contains(d))
      throw std::logic_error("digit source emitted a symbol outside its alphabet");
    stats_.push(d);
    return d;
  }

  std::vector<int> advance(std::uint64_t count) {
    std::vector<int> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(next());
    return out;
  }

  void skip(std::uint64_t count) {
    for (std::uint64_t i = 0; i < count; ++i) next();
  }

  void advance_to(std::uint64_t target) {
    if (target < position())
      throw std::logic_error("digit streams only advance forward");
    skip(target - position());
  }

  const std::vector<std::uint64_t>* boundaries() const {
    return source_->boundaries();
  }
  const std::vector<std::uint64_t>* switch_marks() const {
    return source_->switch_marks();
  }

 private:
  Alphabet alphabet_;
  std::unique_ptr<DigitSource> source_;
  PrefixStats stats_;
};

// The re-instantiable "spec" of a stream: calling the factory twice must
// yield digit-for-digit identical streams.
using StreamFactory = std::function<DigitStream()>;

namespace detail {

// Long division digit emitter for x = num/den in [0,1).  Produces the
// canonical expansion: terminating values end in period (0), never (s-1).
class RationalSource final : public DigitSource {
 public:
  RationalSource(std::int64_t num, std::int64_t den, int radix)
      : num_(num), den_(den), radix_(radix) {}

  int next() override {
    const int128 scaled = static_cast<int128>(num_) * radix_;
    const int digit = static_cast<int>(scaled / den_);
    num_ = static_cast<std::int64_t>(scaled % den_);
    return digit;
  }

 private:
  std::int64_t num_;
  std::int64_t den_;
  int radix_;
};

class PeriodicSource final : public DigitSource {
 public:
  explicit PeriodicSource(std::vector<int> pattern) : pattern_(std::move(pattern)) {
    if (pattern_.empty()) throw SpecError("periodic stream needs a nonempty pattern");
  }
  int next() override {
    const int d = pattern_[pos_];
    pos_ = (pos_ + 1) % pattern_.size();
    return d;
  }

 private:
  std::vector<int> pattern_;
  std::size_t pos_ = 0;
};

// Finite, in-memory digits (file contents).  Streams are unbounded in every
// generated construction; file-backed data is not, so walking past the end
// throws.
class LiteralSource final : public DigitSource {
 public:
  explicit LiteralSource(std::vector<int> digits) : digits_(std::move(digits)) {}
  int next() override {
    if (pos_ >= digits_.size())
      throw std::out_of_range("advanced past the end of a finite digit stream");
    return digits_[pos_++];
  }

 private:
  std::vector<int> digits_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline void check_unit_interval(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0)
    throw std::domain_error("rational stream with zero denominator");
  if (denominator < 0 || numerator < 0 || numerator >= denominator)
    throw std::domain_error("rational stream value must lie in [0,1)");
}

inline DigitStream rational_stream(std::int64_t numerator, std::int64_t denominator,
                                   Alphabet alphabet = kBase4) {
  check_unit_interval(numerator, denominator);
  return DigitStream(alphabet, std::make_unique<detail::RationalSource>(
                                   numerator, denominator, alphabet.radix()));
}

inline DigitStream periodic_stream(std::vector<int> pattern, Alphabet alphabet = kBase4) {
  for (int d : pattern)
    if (!alphabet.contains(d)) throw SpecError("periodic pattern digit outside alphabet");
  return DigitStream(alphabet, std::make_unique<detail::PeriodicSource>(std::move(pattern)));
}

inline DigitStream literal_stream(std::vector<int> digits, Alphabet alphabet = kBase4) {
  for (int d : digits)
    if (!alphabet.contains(d)) throw SpecError("literal digit outside alphabet");
  return DigitStream(alphabet, std::make_unique<detail::LiteralSource>(std::move(digits)));
}

// First `count` digits of the canonical s-adic expansion of numerator/denominator.
inline std::vector<int> digits_of_rational(std::int64_t numerator,
                                           std::int64_t denominator,
                                           Alphabet alphabet, std::uint64_t count) {
  DigitStream s = rational_stream(numerator, denominator, alphabet);
  return s.advance(count);
}

}  // namespace adic
