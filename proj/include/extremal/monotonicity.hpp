#pragma once

// The additive kernel inequality
//   sum_{j,k} 1/(1 - conj(z_j) z_k) >= n^2 / (1 - |Lambda|^2),
// its restriction to circles of radius sqrt(a), and the potential
//   g(a) = n log(1 - a^n) - sum_{j,k} log|a - conj(w_j) w_k|
// whose derivative is a nonnegative multiple of the restricted gap.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "extremal/analytic.hpp"
#include "extremal/configuration.hpp"
#include "extremal/errors.hpp"
#include "extremal/numeric.hpp"

namespace extremal {

inline constexpr double kAdditiveTolerance = 1e-10;
inline constexpr double kMonotoneSlack = 1e-10;
inline constexpr double kDefaultScanLimit = 0.999;

struct AdditiveReport {
  double sum_value = 0.0;
  double bound_value = 0.0;
  double gap = 0.0;  // sum_value - bound_value
  bool equality = false;
  bool passed = false;
};

namespace detail {

inline void require_open_unit_interval(double a) {
  if (!(a > 0.0 && a < 1.0)) throw InvalidParam("a must lie in (0, 1)");
}

// Imaginary parts of the (j,k) and (k,j) terms cancel; anything left over is
// rounding, and more than this means the inputs were not what we think.
inline double checked_real(Complex sum) {
  if (std::abs(sum.imag()) > 1e-12 * (1.0 + std::abs(sum))) {
    throw std::logic_error("kernel double sum has a non-negligible imaginary part");
  }
  return sum.real();
}

}  // namespace detail

// Real part of sum_{j,k} 1/(1 - conj(z_j) z_k).
inline double additive_sum(const AnalyticPair& pair) {
  return detail::checked_real(kernel_double_sum(pair.points()));
}

inline AdditiveReport verify_additive_inequality(const AnalyticPair& pair,
                                                 double tol = kAdditiveTolerance) {
  AdditiveReport r;
  const double n = static_cast<double>(pair.size());
  r.sum_value = additive_sum(pair);
  r.bound_value = n * n / (1.0 - std::norm(pair.lambda()));
  r.gap = r.sum_value - r.bound_value;
  r.equality = std::abs(r.gap) <= tol;
  r.passed = r.gap >= -tol;
  return r;
}

// Real part of sum_{j,k} 1/(1 - a conj(w_j) w_k), 0 < a < 1.
inline double corollary_sum(const TorusConfiguration& tcfg, double a) {
  detail::require_open_unit_interval(a);
  const auto theta = tcfg.angles();
  const std::size_t n = theta.size();
  Accumulator<Complex> sum(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) sum.add(1.0 / (1.0 - a * std::polar(1.0, theta[k] - theta[j])));
  }
  return detail::checked_real(sum.value());
}

// n^2 / (1 - a^n)
inline double corollary_bound(std::size_t n, double a) {
  const double dn = static_cast<double>(n);
  return dn * dn / -std::expm1(dn * std::log(a));
}

inline double g_value(const TorusConfiguration& tcfg, double a) {
  if (!(a >= 0.0 && a < 1.0)) throw InvalidParam("a must lie in [0, 1)");
  const auto theta = tcfg.angles();
  const std::size_t n = theta.size();
  if (a == 0.0) return 0.0;
  const double dn = static_cast<double>(n);
  Accumulator<double> logs(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) logs.add(log_abs_real_minus_unimodular(a, theta[k] - theta[j]));
  }
  return dn * std::log1p(-std::pow(a, dn)) - logs.value();
}

// g'(a) = (corollary_sum(w, a) - n^2/(1 - a^n)) / a on (0, 1).
inline double g_derivative(const TorusConfiguration& tcfg, double a) {
  detail::require_open_unit_interval(a);
  return (corollary_sum(tcfg, a) - corollary_bound(tcfg.size(), a)) / a;
}

// g sampled on a uniform grid of [0, a_max]; the derivative is sampled on
// the same grid without a = 0, so gprime_values[i] belongs to a_grid[i + 1].
struct PotentialCurve {
  std::vector<double> a_grid;
  std::vector<double> g_values;
  std::vector<double> gprime_values;
  // max_i (g[i] - g[i+1]), <= 0 for a nondecreasing curve
  double worst_decrease = 0.0;
  double min_gprime = 0.0;
  bool monotone = true;
};

inline PotentialCurve scan_monotonicity(const TorusConfiguration& tcfg, int grid_size,
                                        double a_max = kDefaultScanLimit) {
  if (grid_size < 2) throw InvalidParam("grid_size must be >= 2");
  if (!(a_max > 0.0 && a_max < 1.0)) throw InvalidParam("a_max must lie in (0, 1)");

  PotentialCurve curve;
  const auto count = static_cast<std::size_t>(grid_size);
  curve.a_grid.resize(count);
  curve.g_values.resize(count);
  curve.gprime_values.resize(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    // Last node pinned to a_max exactly.
    curve.a_grid[i] = (i + 1 == count) ? a_max : a_max * static_cast<double>(i) / static_cast<double>(count - 1);
    curve.g_values[i] = g_value(tcfg, curve.a_grid[i]);
    if (i > 0) curve.gprime_values[i - 1] = g_derivative(tcfg, curve.a_grid[i]);
  }

  curve.worst_decrease = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < count; ++i) {
    curve.worst_decrease = std::max(curve.worst_decrease, curve.g_values[i] - curve.g_values[i + 1]);
  }
  curve.min_gprime = *std::min_element(curve.gprime_values.begin(), curve.gprime_values.end());
  curve.monotone = curve.worst_decrease <= kMonotoneSlack && curve.min_gprime >= -kMonotoneSlack;
  return curve;
}

}  // namespace extremal
