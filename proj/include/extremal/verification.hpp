#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace extremal {

// One numeric comparison. For inequality checks `gap` is signed (bound minus
// value); for identity checks it is |computed - reference|.
struct Check {
  std::string name;
  bool pass = false;
  std::complex<double> computed{};
  std::complex<double> reference{};
  double gap = 0.0;
  double tolerance = 0.0;
};

struct VerificationReport {
  std::vector<Check> checks;
  // Raised when an inequality is attained (within tolerance).
  bool equality = false;
  std::vector<std::string> notes;
  // Largest node count used by any circle quadrature behind the checks.
  std::size_t quadrature_nodes = 0;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }

  const Check* find(std::string_view name) const {
    auto it = std::find_if(checks.begin(), checks.end(),
                           [&](const Check& c) { return c.name == name; });
    return it == checks.end() ? nullptr : &*it;
  }

  double max_gap() const {
    double worst = 0.0;
    for (const auto& c : checks) worst = std::max(worst, c.gap);
    return worst;
  }
};

inline Check identity_check(std::string name, std::complex<double> computed,
                            std::complex<double> reference, double tol) {
  const double gap = std::abs(computed - reference);
  return Check{std::move(name), gap <= tol, computed, reference, gap, tol};
}

}  // namespace extremal
