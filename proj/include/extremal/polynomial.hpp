#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace extremal {

// e_0 = 1, e_1, ..., e_n of the inputs, built one value at a time:
// after absorbing v, e_m <- e_m + v * e_{m-1}.
template <class T>
std::vector<T> elementary_symmetric(std::span<const T> values) {
  std::vector<T> e(values.size() + 1, T{});
  e[0] = T{1};
  std::size_t filled = 0;
  for (const T& v : values) {
    ++filled;
    for (std::size_t m = filled; m >= 1; --m) e[m] += v * e[m - 1];
  }
  return e;
}

template <class T>
std::vector<T> elementary_symmetric(const std::vector<T>& values) {
  return elementary_symmetric(std::span<const T>(values));
}

// coeffs[m] is the coefficient of z^m.
struct PolynomialCoefficients {
  std::vector<std::complex<double>> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  std::complex<double> operator()(std::complex<double> z) const {
    std::complex<double> acc{};
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
  }
};

}  // namespace extremal
