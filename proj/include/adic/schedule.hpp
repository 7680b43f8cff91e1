#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "adic/common.hpp"
#include "adic/rational.hpp"

namespace adic {

// Block length sequence s_1, s_2, ...  The constructions require s_k -> inf,
// k / (s_1+..+s_k) -> 0 and s_{k+1} / (s_1+..+s_k) -> 0; validate() checks
// finite surrogates of those limits on a materialized horizon.
class LengthSchedule {
 public:
  static LengthSchedule linear() {
    LengthSchedule s;
    s.kind_ = Kind::Linear;
    return s;
  }

  // s_k = a*k + b, a >= 1.
  static LengthSchedule affine(std::uint64_t a, std::uint64_t b) {
    if (a == 0) throw SpecError("affine length schedule needs slope >= 1");
    LengthSchedule s;
    s.kind_ = Kind::Affine;
    s.a_ = a;
    s.b_ = b;
    return s;
  }

  static LengthSchedule explicit_values(std::vector<std::uint64_t> values) {
    if (values.size() < 2)
      throw SpecError("explicit length schedule needs at least two entries");
    LengthSchedule s;
    s.kind_ = Kind::Explicit;
    s.values_ = std::move(values);
    return s;
  }

  // 1-based block index.
  std::uint64_t at(std::uint64_t k) const {
    if (k == 0) throw std::domain_error("block indices are 1-based");
    switch (kind_) {
      case Kind::Linear:
        return k;
      case Kind::Affine:
        return a_ * k + b_;
      case Kind::Explicit:
        if (k > values_.size())
          throw SpecError("explicit length schedule exhausted at block " +
                          std::to_string(k));
        return values_[k - 1];
    }
    return 0;
  }

  bool bounded() const { return kind_ == Kind::Explicit; }
  std::uint64_t block_limit() const {
    return kind_ == Kind::Explicit ? values_.size() : ~std::uint64_t{0};
  }

  // Finite growth checks over `horizon` blocks: positivity, fresh running
  // maxima late in the horizon (s_k unbounded surrogate), and both k/T_k and
  // s_{k+1}/T_k shrinking to at most 3/4 of their mid-horizon values.
  void validate(std::uint64_t horizon) const {
    std::uint64_t h = horizon;
    if (bounded() && values_.size() >= 2) {
      if (h + 1 > values_.size()) h = values_.size() - 1;
    }
    if (h < 8) throw SpecError("length schedule horizon too short to validate");
    std::uint64_t running_max = 0, last_improvement = 0, total = 0;
    std::uint64_t half_total = 0;
    const std::uint64_t half = h / 2;
    for (std::uint64_t k = 1; k <= h; ++k) {
      const std::uint64_t s = at(k);
      if (s == 0) throw SpecError("length schedule emits a zero block length");
      if (s > running_max) {
        running_max = s;
        last_improvement = k;
      }
      total += s;
      if (k == half) half_total = total;
    }
    if (last_improvement * 4 < h * 3)
      throw SpecError("length schedule stops growing: no new maximum after block " +
                      std::to_string(last_improvement) + " of " + std::to_string(h));
    // k/T_k comparison at h vs h/2: h*half_total <= (3/4) * half * total.
    if (Rational(static_cast<std::int64_t>(h)) /
            Rational(static_cast<std::int64_t>(total)) >
        Rational(3, 4) * Rational(static_cast<std::int64_t>(half)) /
            Rational(static_cast<std::int64_t>(half_total)))
      throw SpecError("length schedule fails k/(s_1+..+s_k) -> 0 on the horizon");
    if (Rational(static_cast<std::int64_t>(at(h + 1))) /
            Rational(static_cast<std::int64_t>(total)) >
        Rational(3, 4) * Rational(static_cast<std::int64_t>(at(half + 1))) /
            Rational(static_cast<std::int64_t>(half_total)))
      throw SpecError("length schedule fails s_{k+1}/(s_1+..+s_k) -> 0 on the horizon");
  }

 private:
  enum class Kind { Linear, Affine, Explicit };
  Kind kind_ = Kind::Linear;
  std::uint64_t a_ = 1, b_ = 0;
  std::vector<std::uint64_t> values_;
};

}  // namespace adic
