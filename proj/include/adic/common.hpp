#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace adic {

// Raised when a construction spec or configuration violates a documented
// precondition.  The CLI maps these to exit code 2.
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// splitmix64.  Every seeded choice in the library (epsilon bits, block
// shuffles, randomized suites) goes through this generator so that runs are
// bit-reproducible across platforms; std::uniform_int_distribution is not.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform value in [0, bound), bound >= 1.  Rejection keeps it unbiased.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (~std::uint64_t{0} / bound);
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return v % bound;
  }

  bool bit() { return next() >> 63; }

 private:
  std::uint64_t state_;
};

// Stateless bit lookup: the i-th bit of a seeded sequence, random access.
inline bool seeded_bit(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 g(seed ^ (index * 0x9e3779b97f4a7c15ull + 0x517cc1b727220a95ull));
  return g.bit();
}

inline std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace adic
