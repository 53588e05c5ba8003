#pragma once

#include <bit>
#include <complex>
#include <concepts>
#include <cstddef>
#include <string>

#include "extremal/errors.hpp"
#include "extremal/numeric.hpp"

namespace extremal {

// Uniform nodes t_k = 2*pi*k/M on the unit circle.
class QuadratureGrid {
 public:
  static constexpr std::size_t kMinNodes = 64;
  static constexpr std::size_t kDefaultNodes = 256;
  static constexpr std::size_t kMaxNodes = std::size_t{1} << 20;

  explicit QuadratureGrid(std::size_t node_count = kDefaultNodes) : node_count_(node_count) {
    if (node_count_ < kMinNodes || !std::has_single_bit(node_count_)) {
      throw InvalidParam("quadrature node count must be a power of two >= 64, got " +
                         std::to_string(node_count_));
    }
  }

  std::size_t node_count() const { return node_count_; }
  double node(std::size_t k) const {
    return kTwoPi * static_cast<double>(k) / static_cast<double>(node_count_);
  }

 private:
  std::size_t node_count_;
};

struct CircleMean {
  Complex value;
  std::size_t node_count;  // nodes in the accepted estimate
};

// (1/2pi) * integral_0^{2pi} F(t) dt by the trapezoidal rule, doubling the
// node count until two successive estimates differ by less than tol. The
// previous nodes are reused, so each doubling only evaluates the new odd
// nodes; the summation order is fixed for a given M.
template <class Integrand>
  requires std::invocable<Integrand&, double>
CircleMean integrate_circle(Integrand&& integrand, const QuadratureGrid& grid, double tol) {
  std::size_t m = grid.node_count();
  Complex sum{};
  for (std::size_t k = 0; k < m; ++k) sum += Complex(integrand(grid.node(k)));
  Complex estimate = sum / static_cast<double>(m);
  double difference = 0.0;

  while (2 * m <= QuadratureGrid::kMaxNodes) {
    const std::size_t fine = 2 * m;
    Complex odd{};
    for (std::size_t k = 1; k < fine; k += 2) {
      odd += Complex(integrand(kTwoPi * static_cast<double>(k) / static_cast<double>(fine)));
    }
    sum += odd;
    const Complex refined = sum / static_cast<double>(fine);
    difference = std::abs(refined - estimate);
    m = fine;
    estimate = refined;
    if (difference < tol) return {estimate, m};
  }
  throw NoConvergence(m, difference);
}

template <class Integrand>
  requires std::invocable<Integrand&, double>
Complex circle_mean(Integrand&& integrand, const QuadratureGrid& grid, double tol) {
  return integrate_circle(std::forward<Integrand>(integrand), grid, tol).value;
}

}  // namespace extremal
