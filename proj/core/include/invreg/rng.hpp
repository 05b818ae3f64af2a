#pragma once

// Deterministic random streams. The bit generator is std::mt19937_64, whose
// output sequence is fixed by the C++ standard, so seeded runs reproduce
// bit-for-bit across toolchains. Uniform and Gaussian variates are derived by
// hand because the std distributions are implementation-defined.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>

#include "invreg/geom.hpp"

namespace invreg {

class Rng {
 public:
  /// Stream `stream` of seed `seed`. Distinct streams are decorrelated through std::seed_seq.
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  std::uint64_t bits() { return engine_(); }

  /// Uniform on [0, 1) with 53 random mantissa bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform point in [-1,1]^2.
  Point2 uniform_square() {
    const double a = uniform(-1.0, 1.0);
    const double b = uniform(-1.0, 1.0);
    return {a, b};
  }

  /// Two independent standard normals (Box-Muller).
  std::pair<double, double> normal_pair() {
    const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(a), r * std::sin(a)};
  }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace invreg
