#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_set>
#include <vector>

#include "adic/common.hpp"
#include "adic/digits.hpp"
#include "adic/rational.hpp"
#include "adic/stochastic.hpp"

namespace adic {

// Entropy dimension of the set of streams with digit-frequency vector tau:
// -(Σ tau_i ln tau_i) / ln s, with 0 ln 0 = 0.
inline double besicovitch_eggleston_dimension(const StochasticVector& tau, int radix) {
  if (radix < 2) throw std::domain_error("radix must be at least 2");
  if (tau.size() != static_cast<std::size_t>(radix))
    throw std::domain_error("tau must have one entry per digit");
  double h = 0.0;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    const double p = tau[i].to_double();
    if (p > 0.0) h -= p * std::log(p);
  }
  return h / std::log(static_cast<double>(radix));
}

inline double besicovitch_eggleston_dimension(const StochasticVector& tau) {
  return besicovitch_eggleston_dimension(tau, static_cast<int>(tau.size()));
}

// The two-branch family: k-digit blocks over radix 4 whose only free choice
// per block is the leading marker bit, so 2^t cylinders of rank kt meet it.
struct CylinderCoverSpec {
  std::uint64_t k = 2;
};

// log2 of the alpha-volume of the rank-m cylinder cover:
//   m = kt:            t   − 2 α k t
//   m = kt − j, 1<=j<k: (t−1) − 2 α (kt − j)
// Exact rational; consumers exponentiate only for display.
inline Rational cover_alpha_volume_log2(const CylinderCoverSpec& spec, std::uint64_t m,
                                        const Rational& alpha) {
  if (spec.k < 2) throw std::domain_error("cover spec needs block length k >= 2");
  if (m < 1) throw std::domain_error("cylinder rank must be at least 1");
  const std::uint64_t t = (m + spec.k - 1) / spec.k;  // m = k t - j, 0 <= j < k
  const std::uint64_t j = spec.k * t - m;
  const Rational depth = Rational(2) * alpha * Rational(static_cast<std::int64_t>(m));
  if (j == 0) return Rational(static_cast<std::int64_t>(t)) - depth;
  return Rational(static_cast<std::int64_t>(t - 1)) - depth;
}

// The exponent where the rank-kt volumes switch between blowing up and
// vanishing: log2 R_kt = t (1 − 2 k α), so the crossover sits at 1/(2k).
inline Rational crossover_dimension(const CylinderCoverSpec& spec) {
  if (spec.k < 2) throw std::domain_error("cover spec needs block length k >= 2");
  const Rational alpha0(1, 2 * static_cast<std::int64_t>(spec.k));
  // Volume dichotomy, checked symbolically via the slope sign 1 - 2 k alpha.
  for (int probe = -1; probe <= 1; ++probe) {
    const Rational alpha = alpha0 + Rational(probe, 100 * static_cast<std::int64_t>(spec.k));
    const Rational slope = Rational(1) - Rational(2 * static_cast<std::int64_t>(spec.k)) * alpha;
    const Rational step = cover_alpha_volume_log2(spec, 2 * spec.k, alpha) -
                          cover_alpha_volume_log2(spec, spec.k, alpha);
    if (step != slope)
      throw std::logic_error("cover volume slope disagrees with 1 - 2 k alpha");
  }
  return alpha0;
}

enum class DimensionMethod { Formula, Crossover, BoxCount };

inline const char* to_string(DimensionMethod m) {
  switch (m) {
    case DimensionMethod::Formula: return "formula";
    case DimensionMethod::Crossover: return "crossover";
    case DimensionMethod::BoxCount: return "box-count";
  }
  return "box-count";
}

struct DimensionEstimate {
  double value = 0.0;
  DimensionMethod method = DimensionMethod::BoxCount;
  std::vector<std::uint64_t> ranks;   // ranks entering the fit
  std::vector<std::uint64_t> counts;  // M(n) for every rank up to max_rank
  double residual = 0.0;              // rms of the least-squares residuals
  std::size_t sample_count = 0;
};

// Least-squares slope of ln M(n) against n ln(radix) over the upper half of
// the usable ranks.  A rank is usable while M(n) is well below the sample
// count; past that the finite sample undercounts cylinders and the plateau
// would drag the slope toward zero.
inline DimensionEstimate box_counting_estimate(const std::vector<std::string>& points,
                                               std::size_t max_rank, int radix = 4) {
  if (points.size() < 2) throw std::domain_error("box counting needs at least 2 points");
  if (max_rank < 2) throw std::domain_error("box counting needs max_rank >= 2");
  for (const std::string& p : points)
    if (p.size() < max_rank)
      throw std::domain_error("every point needs at least max_rank digits");

  DimensionEstimate est;
  est.sample_count = points.size();
  std::vector<std::uint64_t> usable;
  for (std::size_t n = 1; n <= max_rank; ++n) {
    std::unordered_set<std::string> prefixes;
    prefixes.reserve(points.size() * 2);
    for (const std::string& p : points) prefixes.insert(p.substr(0, n));
    est.counts.push_back(prefixes.size());
    if (prefixes.size() * 5 <= points.size()) usable.push_back(n);
  }
  if (usable.size() < 2)
    throw std::domain_error("fewer than 2 usable ranks: sample too small for max_rank");
  const std::size_t from = usable.size() / 2;
  est.ranks.assign(usable.begin() + static_cast<std::ptrdiff_t>(from), usable.end());
  if (est.ranks.size() < 2)
    est.ranks.assign(usable.end() - 2, usable.end());

  const double logr = std::log(static_cast<double>(radix));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::uint64_t n : est.ranks) {
    const double x = static_cast<double>(n) * logr;
    const double y = std::log(static_cast<double>(est.counts[n - 1]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(est.ranks.size());
  const double denom = m * sxx - sx * sx;
  if (denom == 0.0) throw std::domain_error("degenerate rank window");
  est.value = (m * sxy - sx * sy) / denom;
  const double intercept = (sy - est.value * sx) / m;
  double rss = 0;
  for (std::uint64_t n : est.ranks) {
    const double x = static_cast<double>(n) * logr;
    const double y = std::log(static_cast<double>(est.counts[n - 1]));
    const double e = y - (est.value * x + intercept);
    rss += e * e;
  }
  est.residual = std::sqrt(rss / m);
  est.method = DimensionMethod::BoxCount;
  return est;
}

// ---------------------------------------------------------------------------
// Point samplers.  Points are digit prefixes rendered as ASCII strings; all
// randomness flows through the seed, so samples are reproducible.

inline std::vector<std::string> sample_uniform_points(std::size_t count,
                                                      std::size_t depth, int radix,
                                                      std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::string> points;
  points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::string p(depth, '0');
    for (char& c : p)
      c = static_cast<char>('0' + static_cast<int>(rng.below(static_cast<std::uint64_t>(radix))));
    points.push_back(std::move(p));
  }
  return points;
}

// One point per variant stream: variant(i) must rebuild the i-th stream of a
// seeded family (epsilon choices, block shuffles, ...).
inline std::vector<std::string> sample_variant_points(
    const std::function<DigitStream(std::uint64_t)>& variant, std::size_t count,
    std::size_t depth) {
  std::vector<std::string> points;
  points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    DigitStream s = variant(static_cast<std::uint64_t>(i));
    std::string p;
    p.reserve(depth);
    for (std::size_t d = 0; d < depth; ++d)
      p += static_cast<char>('0' + s.next());
    points.push_back(std::move(p));
  }
  return points;
}

}  // namespace adic
