#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include "extremal/numeric.hpp"

namespace extremal {

// std::mt19937_64 has a standardized output sequence; the real-valued
// draws below are derived by hand (top 53 bits) instead of through
// std::uniform_real_distribution, whose output is implementation-defined.
class Rng {
 public:
  static constexpr std::string_view kName = "mt19937_64/u53";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double angle() { return kTwoPi * uniform(); }

  // Area-uniform point in the closed disc of the given radius.
  Complex in_disc(double radius) {
    const double r = radius * std::sqrt(uniform());
    return std::polar(r, angle());
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace extremal
