#pragma once

#include <cstdint>
#include <random>

namespace dyadic {

// All stochastic corpora derive from std::mt19937_64 (fully specified by the
// standard) with the explicit 53-bit mapping below, so sequences are
// bit-reproducible across platforms. std::uniform_real_distribution is
// implementation-defined and deliberately avoided.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double unit() { return double(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  /// Uniform integer in [0, n).
  std::int64_t below(std::int64_t n) {
    return static_cast<std::int64_t>(unit() * double(n));
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace dyadic
