#pragma once

// Blaschke product B, kernel sum f, the polynomials P, Q, R built from the
// elementary symmetric functions, and circle-mean checks of the identities
// linking them.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "extremal/errors.hpp"
#include "extremal/numeric.hpp"
#include "extremal/polynomial.hpp"
#include "extremal/quadrature.hpp"
#include "extremal/rng.hpp"
#include "extremal/verification.hpp"

namespace extremal {

// Points must satisfy |z_j| <= 1 - kAnalyticMargin.
inline constexpr double kAnalyticMargin = 1e-9;
// Evaluation is allowed slightly past the closed unit disc.
inline constexpr double kEvalRadiusSlack = 1e-9;
inline constexpr double kPoleDistance = 1e-14;
// Above this radius the quadrature converges slowly.
inline constexpr double kSlowQuadratureRadius = 0.99;

// Points in the open unit disc together with Lambda = (-1)^n prod z_j.
class AnalyticPair {
 public:
  explicit AnalyticPair(std::vector<Complex> points) : points_(std::move(points)) {
    if (points_.empty()) throw InvalidParam("analytic pair needs at least one point");
    Complex prod{1.0, 0.0};
    for (std::size_t j = 0; j < points_.size(); ++j) {
      const auto& z = points_[j];
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw InvalidParam("point " + std::to_string(j) + " is not finite");
      }
      if (std::abs(z) > 1.0 - kAnalyticMargin) {
        throw InvalidParam("point " + std::to_string(j) + " is not strictly inside the unit disc");
      }
      prod *= z;
    }
    lambda_ = (points_.size() % 2 == 0) ? prod : -prod;
  }

  std::span<const Complex> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  Complex lambda() const { return lambda_; }

  double max_modulus() const {
    double m = 0.0;
    for (const auto& z : points_) m = std::max(m, std::abs(z));
    return m;
  }

 private:
  std::vector<Complex> points_;
  Complex lambda_;
};

// The n roots of z^n + lambda: |lambda|^{1/n} exp(i (arg(-lambda) + 2 pi j)/n).
inline AnalyticPair roots_of_zn_plus_lambda(int n, Complex lambda) {
  if (n < 1) throw InvalidParam("n must be positive");
  if (!(std::abs(lambda) < 1.0)) throw InvalidParam("|lambda| must be < 1");
  const double radius = std::pow(std::abs(lambda), 1.0 / n);
  const double base = std::arg(-lambda);
  std::vector<Complex> pts(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) pts[j] = std::polar(radius, (base + kTwoPi * j) / n);
  return AnalyticPair(std::move(pts));
}

namespace detail {

inline void require_eval_point(Complex z) {
  if (!(std::abs(z) <= 1.0 + kEvalRadiusSlack)) {
    throw InvalidParam("evaluation point must satisfy |z| <= 1 + 1e-9");
  }
}

inline Complex pole_safe_denominator(Complex zj, Complex z, std::size_t j) {
  const Complex d = 1.0 - std::conj(zj) * z;
  if (std::abs(d) < kPoleDistance) throw PoleProximity(j);
  return d;
}

}  // namespace detail

// B(z) = prod_j (z - z_j) / (1 - conj(z_j) z)
inline Complex blaschke_eval(const AnalyticPair& pair, Complex z) {
  detail::require_eval_point(z);
  Complex b{1.0, 0.0};
  const auto pts = pair.points();
  for (std::size_t j = 0; j < pts.size(); ++j) {
    b *= (z - pts[j]) / detail::pole_safe_denominator(pts[j], z, j);
  }
  return b;
}

// f(z) = sum_j 1 / (1 - conj(z_j) z)
inline Complex f_eval(const AnalyticPair& pair, Complex z) {
  detail::require_eval_point(z);
  Complex f{};
  const auto pts = pair.points();
  for (std::size_t j = 0; j < pts.size(); ++j) f += 1.0 / detail::pole_safe_denominator(pts[j], z, j);
  return f;
}

// sum_{j,k} 1 / (1 - conj(z_j) z_k), accumulated in fixed (j, k) order.
inline Complex kernel_double_sum(std::span<const Complex> pts) {
  Accumulator<Complex> sum(pts.size());
  for (std::size_t j = 0; j < pts.size(); ++j) {
    for (std::size_t k = 0; k < pts.size(); ++k) sum.add(1.0 / (1.0 - std::conj(pts[j]) * pts[k]));
  }
  return sum.value();
}

struct PQR {
  PolynomialCoefficients P;  // prod (z - z_j)
  PolynomialCoefficients Q;  // prod (1 - conj(z_j) z)
  PolynomialCoefficients R;  // sum_j prod_{k != j} (1 - conj(z_k) z)
};

inline PQR build_PQR(const AnalyticPair& pair) {
  const auto e = elementary_symmetric(pair.points());
  const std::size_t n = pair.size();
  auto sign = [](std::size_t p) { return (p % 2 == 0) ? 1.0 : -1.0; };

  PQR out;
  out.P.coeffs.resize(n + 1);
  out.Q.coeffs.resize(n + 1);
  out.R.coeffs.resize(n);
  for (std::size_t m = 0; m <= n; ++m) {
    out.P.coeffs[m] = sign(n - m) * e[n - m];
    out.Q.coeffs[m] = sign(m) * std::conj(e[m]);
    if (m < n) out.R.coeffs[m] = sign(m) * static_cast<double>(n - m) * std::conj(e[m]);
  }
  return out;
}

// B*Q = P and f*Q = R at `samples` random points on |z| = radius.
inline VerificationReport verify_rational_forms(const AnalyticPair& pair, const PQR& pqr, double tol,
                                                std::uint64_t seed = 0, int samples = 16,
                                                double radius = 0.9) {
  Rng rng(seed);
  double worst_bq = 0.0;
  double worst_fq = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Complex z = std::polar(radius, rng.angle());
    const Complex q = pqr.Q(z);
    worst_bq = std::max(worst_bq, std::abs(blaschke_eval(pair, z) * q - pqr.P(z)));
    worst_fq = std::max(worst_fq, std::abs(f_eval(pair, z) * q - pqr.R(z)));
  }
  VerificationReport report;
  report.checks.push_back(Check{"B*Q=P", worst_bq <= tol, worst_bq, 0.0, worst_bq, tol});
  report.checks.push_back(Check{"f*Q=R", worst_fq <= tol, worst_fq, 0.0, worst_fq, tol});
  return report;
}

// Circle means of |f|^2, B conj(f), B, f and |1 - Lambda conj(B)|^2 against
// their closed forms. Quadrature runs to a tenth of the check tolerance.
inline VerificationReport verify_cauchy_identities(const AnalyticPair& pair,
                                                   double tol = 1e-9,
                                                   const QuadratureGrid& grid = QuadratureGrid()) {
  const Complex lambda = pair.lambda();
  const double n = static_cast<double>(pair.size());
  const double qtol = 0.1 * tol;
  auto on_circle = [](double t) { return std::polar(1.0, t); };

  VerificationReport report;
  if (pair.max_modulus() > kSlowQuadratureRadius) {
    report.notes.push_back("max |z_j| > 0.99: circle quadrature may converge slowly");
  }
  auto run = [&](std::string name, auto integrand, Complex reference) {
    const CircleMean mean = integrate_circle(integrand, grid, qtol);
    report.quadrature_nodes = std::max(report.quadrature_nodes, mean.node_count);
    report.checks.push_back(identity_check(std::move(name), mean.value, reference, tol));
  };

  run("mean|f|^2", [&](double t) { return Complex(std::norm(f_eval(pair, on_circle(t)))); },
      kernel_double_sum(pair.points()));
  run("mean B*conj(f)",
      [&](double t) {
        const Complex z = on_circle(t);
        return blaschke_eval(pair, z) * std::conj(f_eval(pair, z));
      },
      Complex{});
  run("mean B", [&](double t) { return blaschke_eval(pair, on_circle(t)); }, lambda);
  run("mean f", [&](double t) { return f_eval(pair, on_circle(t)); }, Complex(n));
  run("mean|1-Lambda*conj(B)|^2",
      [&](double t) {
        return Complex(std::norm(1.0 - lambda * std::conj(blaschke_eval(pair, on_circle(t)))));
      },
      Complex(1.0 - std::norm(lambda)));
  return report;
}

// Pointwise test of f = c (1 - conj(Lambda) B), c = n / (1 - |Lambda|^2), at
// 64 equispaced points of the unit circle. Holds exactly for the roots of
// z^n + Lambda.
inline VerificationReport verify_equality_function(const AnalyticPair& pair, double tol = 1e-9,
                                                   int samples = 64) {
  const Complex lambda = pair.lambda();
  const double c = static_cast<double>(pair.size()) / (1.0 - std::norm(lambda));
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const Complex z = std::polar(1.0, kTwoPi * k / samples);
    const Complex rhs = c * (1.0 - std::conj(lambda) * blaschke_eval(pair, z));
    worst = std::max(worst, std::abs(f_eval(pair, z) - rhs));
  }
  VerificationReport report;
  report.checks.push_back(Check{"f=c(1-conj(Lambda)B)", worst <= tol, worst, 0.0, worst, tol});
  report.equality = worst <= tol;
  return report;
}

// For m = 1..n-1:
//   (n - (1-|L|^2)(n-m)) (-1)^m conj(e_m) = n conj(L) (-1)^{n-m} e_{n-m}
//   (1-|L|^2)^2 m (n-m) conj(e_m) = 0
// Both hold for the roots of z^n + Lambda; elsewhere the failing m are reported.
inline VerificationReport verify_coefficient_relations(const AnalyticPair& pair, double tol = 1e-9) {
  const auto e = elementary_symmetric(pair.points());
  const std::size_t n = pair.size();
  const Complex lambda = pair.lambda();
  const double damp = 1.0 - std::norm(lambda);
  const double dn = static_cast<double>(n);
  auto sign = [](std::size_t p) { return (p % 2 == 0) ? 1.0 : -1.0; };

  VerificationReport report;
  for (std::size_t m = 1; m < n; ++m) {
    const double dm = static_cast<double>(m);
    const Complex lhs = (dn - damp * (dn - dm)) * sign(m) * std::conj(e[m]);
    const Complex rhs = dn * std::conj(lambda) * sign(n - m) * e[n - m];
    report.checks.push_back(
        identity_check("relation[m=" + std::to_string(m) + "]", lhs, rhs, tol));
    const Complex consequence = damp * damp * dm * (dn - dm) * std::conj(e[m]);
    report.checks.push_back(
        identity_check("consequence[m=" + std::to_string(m) + "]", consequence, 0.0, tol));
  }
  return report;
}

}  // namespace extremal
