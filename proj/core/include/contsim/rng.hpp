#pragma once

#include <cstdint>
#include <random>

namespace contsim {

/// Seeded generator for scenario randomness (arrival jitter). The uniform
/// mapping is spelled out instead of going through std::uniform_real_distribution
/// so that a given seed produces the same draws on every platform and
/// standard library.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  /// Uniform double in [0, 1).
  double next_unit() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) {
    return lo + next_unit() * (hi - lo);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace contsim
