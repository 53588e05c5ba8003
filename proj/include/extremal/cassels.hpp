#pragma once

// Pairwise products prod_{j != k} |1 - conj(z_j) z_k| over a disc of radius
// rho, the closed-form bound ((rho^{2n} - 1)/(rho^2 - 1))^n and the classical
// side conditions. Every product is returned as a natural log.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "extremal/configuration.hpp"
#include "extremal/errors.hpp"
#include "extremal/numeric.hpp"
#include "extremal/verification.hpp"

namespace extremal {

inline constexpr double kDefaultVerifyTolerance = 1e-9;

namespace detail {

inline void require_rho_above_one(double rho) {
  if (!(std::isfinite(rho) && rho > 1.0)) throw InvalidParam("rho must be finite and > 1");
}

inline void require_positive(int n) {
  if (n < 1) throw InvalidParam("n must be a positive integer");
}

inline double log_factor(const Complex& zj, const Complex& zk, std::size_t j, std::size_t k) {
  const double m = std::abs(1.0 - std::conj(zj) * zk);
  if (m == 0.0) throw DegenerateFactor(j, k);
  return std::log(m);
}

}  // namespace detail

// sum_{j != k} log|1 - conj(z_j) z_k|; 0 for a single point.
inline double log_pairwise_product(const DiscConfiguration& cfg) {
  const auto pts = cfg.points();
  const std::size_t n = pts.size();
  Accumulator<double> sum(n);
  // |1 - conj(a) b| = |1 - conj(b) a|, so each unordered pair counts twice.
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) sum.add(detail::log_factor(pts[j], pts[k], j, k));
  }
  return 2.0 * sum.value();
}

// sum_{j,k} log|1 - conj(z_j) z_k| including the diagonal log|1 - |z_j|^2|.
inline double full_product_with_diagonal(const DiscConfiguration& cfg) {
  const auto pts = cfg.points();
  const std::size_t n = pts.size();
  Accumulator<double> diag(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double m = std::abs(1.0 - std::norm(pts[j]));
    if (m == 0.0) throw DegenerateFactor(j, j);
    diag.add(std::log(m));
  }
  return diag.value() + log_pairwise_product(cfg);
}

// n * log((rho^{2n} - 1)/(rho^2 - 1)), stable for large n * log(rho).
inline double cassels_log_bound(int n, double rho) {
  detail::require_positive(n);
  detail::require_rho_above_one(rho);
  if (n == 1) return 0.0;
  const double dn = static_cast<double>(n);
  const double log_rho = std::log(rho);
  // log(rho^{2n} - 1) = 2n log(rho) + log1p(-rho^{-2n})
  const double log_top = 2.0 * dn * log_rho + std::log1p(-std::exp(-2.0 * dn * log_rho));
  const double log_bottom = std::log((rho - 1.0) * (rho + 1.0));
  return dn * (log_top - log_bottom);
}

// (n, rho) with the bound precomputed in log form.
struct BoundParams {
  int n = 1;
  double rho = 2.0;
  double log_bound = 0.0;

  static BoundParams make(int n, double rho) { return BoundParams{n, rho, cassels_log_bound(n, rho)}; }
};

// Checks log_product <= log_bound. `gap` = log_bound - log_product; equality
// is flagged when |gap| <= tol.
inline VerificationReport verify_main_inequality(const DiscConfiguration& cfg,
                                                 double tol = kDefaultVerifyTolerance) {
  const double log_product = log_pairwise_product(cfg);
  const double log_bound = cassels_log_bound(static_cast<int>(cfg.size()), cfg.rho());
  const double gap = log_bound - log_product;
  VerificationReport report;
  report.checks.push_back(Check{"main_inequality", gap >= -tol, log_product, log_bound, gap, tol});
  report.equality = std::abs(gap) <= tol;
  return report;
}

// sum_{j,k} log|rho^{-2} - conj(omega_j) omega_k|, diagonal included.
//
// Equals full_product_with_diagonal(rho * omega) - 2 n^2 log(rho).
inline double log_pairwise_product_equiv_form(const TorusConfiguration& tcfg, double rho) {
  detail::require_rho_above_one(rho);
  const auto theta = tcfg.angles();
  const std::size_t n = theta.size();
  const double a = 1.0 / (rho * rho);
  Accumulator<double> sum(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      sum.add(log_abs_real_minus_unimodular(a, theta[k] - theta[j]));
    }
  }
  return sum.value();
}

// cos(pi/n) <= rho^2 / (rho^4 - rho^2 + 1)
inline bool cassels_condition(int n, double rho) {
  detail::require_positive(n);
  detail::require_rho_above_one(rho);
  const double r2 = rho * rho;
  return std::cos(kPi / n) <= r2 / (r2 * r2 - r2 + 1.0);
}

// cos(pi/n) <= 2 rho^2 / (rho^4 + 1)
inline bool alexander_condition(int n, double rho) {
  detail::require_positive(n);
  detail::require_rho_above_one(rho);
  const double r2 = rho * rho;
  return std::cos(kPi / n) <= 2.0 * r2 / (r2 * r2 + 1.0);
}

// For boundary points z_j = rho * omega_j,
//   prod_{j != k} |1 - conj(z_j) z_k|
//     = rho^{n(n-1)} prod_{j<k} ((rho - 1/rho)^2 + |omega_j - omega_k|^2).
// The left side goes through complex arithmetic, the right side through
// squared chords. Passes iff |L - R| / max(1, |L|, |R|) <= tol.
inline VerificationReport dubickas_factorization_check(const TorusConfiguration& tcfg, double rho,
                                                       double tol = kDefaultVerifyTolerance) {
  detail::require_rho_above_one(rho);
  const std::size_t n = tcfg.size();
  const double lhs = log_pairwise_product(DiscConfiguration::on_circle(tcfg, rho));

  const double shift = (rho - 1.0 / rho) * (rho - 1.0 / rho);
  Accumulator<double> chords(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      chords.add(std::log(shift + squared_chord(tcfg.angle(j), tcfg.angle(k))));
    }
  }
  const double dn = static_cast<double>(n);
  const double rhs = dn * (dn - 1.0) * std::log(rho) + chords.value();

  const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
  const double rel_gap = std::abs(lhs - rhs) / scale;
  VerificationReport report;
  report.checks.push_back(Check{"dubickas_factorization", rel_gap <= tol, lhs, rhs, rel_gap, tol});
  return report;
}

}  // namespace extremal
