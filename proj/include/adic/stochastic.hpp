#pragma once

#include <string>
#include <utility>
#include <vector>

#include "adic/common.hpp"
#include "adic/rational.hpp"

namespace adic {

// Non-negative exact-rational entries summing to exactly 1.
class StochasticVector {
 public:
  explicit StochasticVector(std::vector<Rational> entries, std::string name = "vector")
      : entries_(std::move(entries)) {
    if (entries_.size() < 2) throw SpecError(name + " needs at least two entries");
    Rational sum = 0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i] < Rational(0))
        throw SpecError(name + " entry " + std::to_string(i) + " is negative (" +
                        entries_[i].str() + ")");
      sum += entries_[i];
    }
    if (sum != Rational(1))
      throw SpecError(name + " entries sum to " + sum.str() + ", expected 1");
  }

  std::size_t size() const { return entries_.size(); }
  const Rational& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<Rational>& entries() const { return entries_; }

  // Σ i·p_i, the mean of a digit drawn from this distribution.
  Rational mean() const {
    Rational m = 0;
    for (std::size_t i = 1; i < entries_.size(); ++i)
      m += Rational(static_cast<std::int64_t>(i)) * entries_[i];
    return m;
  }

  bool operator==(const StochasticVector& other) const {
    return entries_ == other.entries_;
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) s += ",";
      s += entries_[i].str();
    }
    return s + ")";
  }

 private:
  std::vector<Rational> entries_;
};

class InfeasibleFrequencies : public SpecError {
 public:
  using SpecError::SpecError;
};

// The two linear constraints every base-4 frequency vector satisfies:
//   v0 + v1 + v2 + v3 = 1
//   v1 + 2 v2 + 3 v3  = theta
// Given two known coordinates, the other two are determined.  Returns the
// raw solution without range checks; indices must be distinct, in 0..3.
inline std::pair<Rational, Rational> solve_frequency_pair(
    const Rational& theta, std::pair<int, Rational> known1,
    std::pair<int, Rational> known2) {
  const int i = known1.first, j = known2.first;
  if (i < 0 || i > 3 || j < 0 || j > 3)
    throw std::domain_error("frequency index outside 0..3");
  if (i == j) throw std::domain_error("known frequency indices must be distinct");
  int unknown[2];
  int u = 0;
  for (int d = 0; d < 4; ++d)
    if (d != i && d != j) unknown[u++] = d;
  const int a = unknown[0], b = unknown[1];  // a < b, so b - a >= 1
  const Rational rest = Rational(1) - known1.second - known2.second;
  const Rational weighted = theta - Rational(i) * known1.second -
                            Rational(j) * known2.second;
  // v_a + v_b = rest;  a v_a + b v_b = weighted.
  const Rational vb = (weighted - Rational(a) * rest) / Rational(b - a);
  const Rational va = rest - vb;
  return {va, vb};
}

struct RecoveredFrequencies {
  int index_a;
  Rational value_a;
  int index_b;
  Rational value_b;
};

// Range-checked recovery of the two missing digit frequencies.
inline RecoveredFrequencies recover_frequencies(const Rational& theta,
                                                std::pair<int, Rational> known1,
                                                std::pair<int, Rational> known2) {
  for (const auto& k : {known1, known2})
    if (k.second < Rational(0) || k.second > Rational(1))
      throw std::domain_error("known frequency outside [0,1]");
  const auto [va, vb] = solve_frequency_pair(theta, known1, known2);
  int unknown[2];
  int u = 0;
  for (int d = 0; d < 4; ++d)
    if (d != known1.first && d != known2.first) unknown[u++] = d;
  if (va < Rational(0) || va > Rational(1) || vb < Rational(0) || vb > Rational(1))
    throw InfeasibleFrequencies(
        "recovered frequencies lie outside [0,1]: v" + std::to_string(unknown[0]) +
        " = " + va.str() + ", v" + std::to_string(unknown[1]) + " = " + vb.str());
  return {unknown[0], va, unknown[1], vb};
}

// Completes (tau0, tau1, ?, ?) into a full column with the given mean.
// Throws naming the offending coordinate when the completion is negative.
inline StochasticVector complete_column(const Rational& theta, const Rational& tau0,
                                        const Rational& tau1,
                                        const std::string& name = "column") {
  const auto [tau2, tau3] = solve_frequency_pair(theta, {0, tau0}, {1, tau1});
  if (tau0 < Rational(0) || tau1 < Rational(0) || tau2 < Rational(0) ||
      tau3 < Rational(0))
    throw SpecError(name + " (" + tau0.str() + "," + tau1.str() + "," + tau2.str() +
                    "," + tau3.str() + ") has a negative entry");
  return StochasticVector({tau0, tau1, tau2, tau3}, name);
}

}  // namespace adic
