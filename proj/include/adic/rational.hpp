#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "adic/common.hpp"

namespace adic {

using int128 = __int128;
using uint128 = unsigned __int128;

class RationalOverflow : public std::overflow_error {
 public:
  RationalOverflow() : std::overflow_error("rational arithmetic overflow") {}
};

namespace detail {

inline uint128 ugcd(uint128 a, uint128 b) {
  while (b != 0) {
    uint128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline std::int64_t floor_div(int128 a, int128 b) {
  // b > 0 assumed; rounds toward -infinity.
  int128 q = a / b;
  if (a % b != 0 && a < 0) --q;
  if (q > std::numeric_limits<std::int64_t>::max() ||
      q < std::numeric_limits<std::int64_t>::min())
    throw RationalOverflow();
  return static_cast<std::int64_t>(q);
}

}  // namespace detail

// Exact rational with 64-bit numerator and positive 64-bit denominator,
// always reduced.  Products run through 128 bits; values that do not fit
// back into 64 bits after reduction throw rather than wrap.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t value) : num_(value) {}  // implicit on purpose
  Rational(std::int64_t num, std::int64_t den) {
    *this = from128(num, den);
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }

  std::int64_t floor() const {
    return detail::floor_div(static_cast<int128>(num_), den_);
  }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  // "num/den", or just "num" for integers.
  std::string str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) {
      s += '/';
      s += std::to_string(den_);
    }
    return s;
  }

  std::string decimal(int significant = 12) const;

  // Accepts "a", "-a", "a/b".
  static Rational parse(std::string_view text);

  friend Rational operator+(const Rational& x, const Rational& y) {
    return from128(static_cast<int128>(x.num_) * y.den_ +
                       static_cast<int128>(y.num_) * x.den_,
                   static_cast<int128>(x.den_) * y.den_);
  }
  friend Rational operator-(const Rational& x, const Rational& y) {
    return from128(static_cast<int128>(x.num_) * y.den_ -
                       static_cast<int128>(y.num_) * x.den_,
                   static_cast<int128>(x.den_) * y.den_);
  }
  friend Rational operator*(const Rational& x, const Rational& y) {
    return from128(static_cast<int128>(x.num_) * y.num_,
                   static_cast<int128>(x.den_) * y.den_);
  }
  friend Rational operator/(const Rational& x, const Rational& y) {
    if (y.num_ == 0) throw std::domain_error("rational division by zero");
    return from128(static_cast<int128>(x.num_) * y.den_,
                   static_cast<int128>(x.den_) * y.num_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  Rational& operator+=(const Rational& x) { return *this = *this + x; }
  Rational& operator-=(const Rational& x) { return *this = *this - x; }
  Rational& operator*=(const Rational& x) { return *this = *this * x; }
  Rational& operator/=(const Rational& x) { return *this = *this / x; }

  friend bool operator==(const Rational& x, const Rational& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;  // both reduced
  }
  friend bool operator!=(const Rational& x, const Rational& y) {
    return !(x == y);
  }
  friend bool operator<(const Rational& x, const Rational& y) {
    return static_cast<int128>(x.num_) * y.den_ <
           static_cast<int128>(y.num_) * x.den_;
  }
  friend bool operator>(const Rational& x, const Rational& y) { return y < x; }
  friend bool operator<=(const Rational& x, const Rational& y) {
    return !(y < x);
  }
  friend bool operator>=(const Rational& x, const Rational& y) {
    return !(x < y);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& x) {
    return os << x.str();
  }

 private:
  static Rational from128(int128 num, int128 den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    if (num == 0) {
      Rational r;
      return r;
    }
    const uint128 un = num < 0 ? static_cast<uint128>(-num) : static_cast<uint128>(num);
    const uint128 g = detail::ugcd(un, static_cast<uint128>(den));
    num /= static_cast<int128>(g);
    den /= static_cast<int128>(g);
    if (num > std::numeric_limits<std::int64_t>::max() ||
        num < std::numeric_limits<std::int64_t>::min() ||
        den > std::numeric_limits<std::int64_t>::max())
      throw RationalOverflow();
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational abs(const Rational& x) { return x.num() < 0 ? -x : x; }
inline const Rational& min(const Rational& x, const Rational& y) {
  return y < x ? y : x;
}
inline const Rational& max(const Rational& x, const Rational& y) {
  return x < y ? y : x;
}

// Exact ⌊r * scale⌋.
inline std::int64_t floor_scaled(const Rational& r, std::uint64_t scale) {
  return detail::floor_div(static_cast<int128>(r.num()) * static_cast<int128>(scale),
                           r.den());
}

inline Rational Rational::parse(std::string_view text) {
  auto fail = [&] {
    throw SpecError("cannot parse rational from \"" + std::string(text) + "\"");
  };
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  if (s.empty()) fail();
  std::int64_t num = 0, den = 1;
  const auto slash = s.find('/');
  std::string_view num_part = s.substr(0, slash);
  auto r1 = std::from_chars(num_part.data(), num_part.data() + num_part.size(), num);
  if (r1.ec != std::errc{} || r1.ptr != num_part.data() + num_part.size()) fail();
  if (slash != std::string_view::npos) {
    std::string_view den_part = s.substr(slash + 1);
    auto r2 = std::from_chars(den_part.data(), den_part.data() + den_part.size(), den);
    if (r2.ec != std::errc{} || r2.ptr != den_part.data() + den_part.size()) fail();
    if (den == 0) fail();
  }
  return Rational(num, den);
}

// Fixed-point decimal rendering with `significant` digits, exact integer
// arithmetic and half-up rounding.  No scientific notation: values here live
// in [0, s-1] so the plain form stays short.
inline std::string Rational::decimal(int significant) const {
  if (significant < 1 || significant > 30)
    throw std::domain_error("significant digits out of range");
  if (num_ == 0) return "0." + std::string(static_cast<std::size_t>(significant), '0');
  const bool negative = num_ < 0;
  const uint128 n = negative ? static_cast<uint128>(-static_cast<int128>(num_))
                             : static_cast<uint128>(num_);
  const uint128 d = static_cast<uint128>(den_);
  // Decimal exponent e with 10^e <= n/d < 10^(e+1).
  int e = 0;
  if (n >= d) {
    uint128 scaled = d;
    while (n / 10 >= scaled) {
      scaled *= 10;
      ++e;
    }
  } else {
    uint128 scaled = n * 10;
    e = -1;
    while (scaled < d) {
      if (e < -40) throw RationalOverflow();
      scaled *= 10;
      --e;
    }
  }
  // Want q = round(n/d * 10^(significant-1-e)) with significant digits.
  int shift = significant - 1 - e;
  uint128 scaled_num = n;
  for (int i = 0; i < shift; ++i) {
    if (scaled_num > (~uint128{0}) / 10) throw RationalOverflow();
    scaled_num *= 10;
  }
  if (shift < 0) throw RationalOverflow();  // values >= 10^significant unsupported
  uint128 q = (2 * scaled_num + d) / (2 * d);  // half-up
  // Rounding may carry into one more digit.
  uint128 upper = 1;
  for (int i = 0; i < significant; ++i) upper *= 10;
  if (q >= upper) {
    q /= 10;
    ++e;
  }
  std::string digits;
  digits.reserve(static_cast<std::size_t>(significant));
  uint128 rem = q;
  for (int i = 0; i < significant; ++i) {
    digits += static_cast<char>('0' + static_cast<int>(rem % 10));
    rem /= 10;
  }
  std::reverse(digits.begin(), digits.end());
  std::string out;
  if (negative) out += '-';
  if (e >= 0) {
    out += digits.substr(0, static_cast<std::size_t>(e) + 1);
    out += '.';
    out += digits.substr(static_cast<std::size_t>(e) + 1);
    if (out.back() == '.') out.pop_back();
  } else {
    out += "0.";
    out += std::string(static_cast<std::size_t>(-e) - 1, '0');
    out += digits;
  }
  return out;
}

}  // namespace adic
