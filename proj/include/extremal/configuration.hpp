#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "extremal/errors.hpp"
#include "extremal/numeric.hpp"

namespace extremal {

// Points are accepted up to this far outside the radius bound, never clamped.
inline constexpr double kBoundaryTolerance = 1e-12;

// n unimodular points, stored as angles reduced into [0, 2*pi).
class TorusConfiguration {
 public:
  TorusConfiguration() = default;

  explicit TorusConfiguration(std::vector<double> angles) : angles_(std::move(angles)) {
    for (auto& a : angles_) {
      if (!std::isfinite(a)) throw InvalidParam("angles must be finite");
      a = reduce_angle(a);
    }
  }

  // Vertices phase + 2*pi*k/n.
  static TorusConfiguration regular(std::size_t n, double phase = 0.0) {
    std::vector<double> angles(n);
    for (std::size_t k = 0; k < n; ++k) {
      angles[k] = phase + kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    }
    return TorusConfiguration(std::move(angles));
  }

  std::span<const double> angles() const { return angles_; }
  double angle(std::size_t j) const { return angles_[j]; }
  std::size_t size() const { return angles_.size(); }
  Complex point(std::size_t j) const { return std::polar(1.0, angles_[j]); }

 private:
  std::vector<double> angles_;
};

// n >= 1 complex points in the closed disc |z| <= rho.
//
// rho = 1 is admitted so that the unit-disc (Schur) case can be expressed;
// the closed-form bound itself needs rho > 1.
class DiscConfiguration {
 public:
  DiscConfiguration(std::vector<Complex> points, double rho)
      : points_(std::move(points)), rho_(rho) {
    if (!(std::isfinite(rho_) && rho_ >= 1.0)) {
      throw InvalidParam("disc radius must be finite and >= 1");
    }
    if (points_.empty()) throw InvalidParam("configuration needs at least one point");
    for (std::size_t j = 0; j < points_.size(); ++j) {
      const auto& z = points_[j];
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw InvalidParam("point " + std::to_string(j) + " is not finite");
      }
      if (std::abs(z) - rho_ > kBoundaryTolerance) {
        throw InvalidParam("point " + std::to_string(j) + " lies outside |z| <= rho");
      }
    }
  }

  // z_j = rho * omega_j.
  static DiscConfiguration on_circle(const TorusConfiguration& torus, double rho) {
    std::vector<Complex> pts(torus.size());
    for (std::size_t j = 0; j < torus.size(); ++j) pts[j] = std::polar(rho, torus.angle(j));
    return DiscConfiguration(std::move(pts), rho);
  }

  static DiscConfiguration regular_polygon(std::size_t n, double rho, double phase = 0.0) {
    return on_circle(TorusConfiguration::regular(n, phase), rho);
  }

  std::span<const Complex> points() const { return points_; }
  const Complex& operator[](std::size_t j) const { return points_[j]; }
  std::size_t size() const { return points_.size(); }
  double rho() const { return rho_; }

  bool on_boundary(double tol = kBoundaryTolerance) const {
    for (const auto& z : points_) {
      if (std::abs(std::abs(z) - rho_) > tol) return false;
    }
    return true;
  }

  // Angles of the points; meaningful as a torus configuration only when
  // on_boundary() holds.
  TorusConfiguration angles() const {
    std::vector<double> a(points_.size());
    for (std::size_t j = 0; j < points_.size(); ++j) a[j] = std::arg(points_[j]);
    return TorusConfiguration(std::move(a));
  }

 private:
  std::vector<Complex> points_;
  double rho_;
};

}  // namespace extremal
