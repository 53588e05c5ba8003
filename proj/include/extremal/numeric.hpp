#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <type_traits>

namespace extremal {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Reduce an angle into [0, 2*pi).
inline double reduce_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

// log|r - e^{i delta}| for real r >= 0, via (1-r)^2 + 4 r sin^2(delta/2).
// Avoids the cancellation in 1 + r^2 - 2 r cos(delta) when r ~ 1, delta ~ 0.
inline double log_abs_real_minus_unimodular(double r, double delta) {
  const double s = std::sin(0.5 * delta);
  const double d = 1.0 - r;
  return 0.5 * std::log(d * d + 4.0 * r * s * s);
}

// |e^{i a} - e^{i b}|^2 = 4 sin^2((a-b)/2).
inline double squared_chord(double a, double b) {
  const double s = std::sin(0.5 * (a - b));
  return 4.0 * s * s;
}

// Neumaier summation.
template <class T>
class CompensatedSum {
 public:
  void add(T x) {
    const T t = sum_ + x;
    if constexpr (std::is_same_v<T, double>) {
      if (std::abs(sum_) >= std::abs(x)) {
        comp_ += (sum_ - t) + x;
      } else {
        comp_ += (x - t) + sum_;
      }
    } else {
      comp_ += compensation(sum_, x, t);
    }
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

 private:
  static T compensation(T s, T x, T t) {
    // complex: compensate each part independently
    auto part = [](double a, double b, double c) {
      return std::abs(a) >= std::abs(b) ? (a - c) + b : (b - c) + a;
    };
    return T(part(s.real(), x.real(), t.real()), part(s.imag(), x.imag(), t.imag()));
  }

  T sum_{};
  T comp_{};
};

inline constexpr std::size_t kCompensatedSumThreshold = 100;

// Double sums over n points: plain left-to-right accumulation for small n,
// compensated for n >= 100.
template <class T>
class Accumulator {
 public:
  explicit Accumulator(std::size_t point_count)
      : compensated_(point_count >= kCompensatedSumThreshold) {}

  void add(T x) {
    if (compensated_) {
      kahan_.add(x);
    } else {
      plain_ += x;
    }
  }
  T value() const { return compensated_ ? kahan_.value() : plain_; }

 private:
  bool compensated_;
  T plain_{};
  CompensatedSum<T> kahan_;
};

}  // namespace extremal
