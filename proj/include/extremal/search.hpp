#pragma once

// Searches over unimodular configurations: multi-start gradient ascent of the
// log pairwise product, coordinate-wise pushing of disc points onto the
// boundary circle, regular-polygon detection and the chord symmetric-function
// search harness.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "extremal/cassels.hpp"
#include "extremal/configuration.hpp"
#include "extremal/errors.hpp"
#include "extremal/numeric.hpp"
#include "extremal/parallel.hpp"
#include "extremal/polynomial.hpp"
#include "extremal/rng.hpp"

namespace extremal {

inline constexpr double kDefaultPolygonTolerance = 1e-6;

// sum_{j != k} log|1 - rho^2 e^{i(theta_k - theta_j)}|
inline double torus_log_objective(const TorusConfiguration& tcfg, double rho) {
  detail::require_rho_above_one(rho);
  const auto theta = tcfg.angles();
  const std::size_t n = theta.size();
  const double r2 = rho * rho;
  Accumulator<double> sum(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) sum.add(log_abs_real_minus_unimodular(r2, theta[k] - theta[j]));
  }
  return 2.0 * sum.value();
}

namespace detail {

// Objective and gradient on raw (unreduced) angles.
inline double raw_objective(std::span<const double> theta, double r2) {
  const std::size_t n = theta.size();
  Accumulator<double> sum(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) sum.add(log_abs_real_minus_unimodular(r2, theta[k] - theta[j]));
  }
  return 2.0 * sum.value();
}

// d/dtheta_k = sum_{j != k} 2 rho^2 sin(d) / (1 + rho^4 - 2 rho^2 cos(d)), d = theta_k - theta_j
inline void raw_gradient(std::span<const double> theta, double r2, std::span<double> grad) {
  const std::size_t n = theta.size();
  std::fill(grad.begin(), grad.end(), 0.0);
  const double d1 = (r2 - 1.0) * (r2 - 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      const double d = theta[k] - theta[j];
      const double s = std::sin(0.5 * d);
      const double term = 2.0 * r2 * std::sin(d) / (d1 + 4.0 * r2 * s * s);
      grad[k] += term;
      grad[j] -= term;
    }
  }
}

}  // namespace detail

inline std::vector<double> torus_gradient(const TorusConfiguration& tcfg, double rho) {
  detail::require_rho_above_one(rho);
  std::vector<double> grad(tcfg.size());
  detail::raw_gradient(tcfg.angles(), rho * rho, grad);
  return grad;
}

// max |gap_i - 2*pi/n| over the sorted cyclic gaps, wrap-around included.
inline double regular_ngon_deviation(const TorusConfiguration& tcfg) {
  const std::size_t n = tcfg.size();
  if (n <= 1) return 0.0;
  std::vector<double> a(tcfg.angles().begin(), tcfg.angles().end());
  std::sort(a.begin(), a.end());
  const double expected = kTwoPi / static_cast<double>(n);
  double worst = std::abs((a.front() + kTwoPi - a.back()) - expected);
  for (std::size_t i = 0; i + 1 < n; ++i) worst = std::max(worst, std::abs((a[i + 1] - a[i]) - expected));
  return worst;
}

inline bool detect_regular_ngon(const TorusConfiguration& tcfg, double tol = kDefaultPolygonTolerance) {
  return regular_ngon_deviation(tcfg) <= tol;
}

struct OptimizerOptions {
  double initial_step = 0.1;
  double shrink = 0.5;
  double armijo = 1e-4;
  int max_iterations = 5000;
  double gradient_tolerance = 1e-10;
  // Converged results further than this below the bound are non-global.
  double nonglobal_gap = 1e-6;
  double polygon_tolerance = kDefaultPolygonTolerance;
  // Iterates may not exceed the closed-form bound by more than this.
  double rail_slack = 1e-9;
};

enum class OptimizationStatus { kGlobal, kNonGlobal, kIterationCap };

inline const char* to_string(OptimizationStatus s) {
  switch (s) {
    case OptimizationStatus::kGlobal: return "converged";
    case OptimizationStatus::kNonGlobal: return "converged-to-nonglobal";
    case OptimizationStatus::kIterationCap: return "iteration-cap";
  }
  return "unknown";
}

struct OptimizationResult {
  TorusConfiguration angles;
  double log_product = 0.0;
  double gradient_norm = 0.0;  // infinity norm, gauge component excluded
  int iterations = 0;
  bool converged = false;
  bool is_regular_ngon = false;
  std::uint64_t start_seed = 0;
  OptimizationStatus status = OptimizationStatus::kIterationCap;
  // max over iterates of log_product - bound; must stay <= rail_slack
  double max_bound_excess = -std::numeric_limits<double>::infinity();
};

// Gradient ascent with theta_0 pinned to 0 (the objective only sees angle
// differences). Each iteration tries a Barzilai-Borwein step, falling back to
// initial_step, and backtracks until the Armijo condition holds. The Armijo
// test allows a few ulps of the objective so that rounding noise near the
// maximum does not stall the line search.
inline OptimizationResult ascend_torus(const TorusConfiguration& start, double rho,
                                       const OptimizerOptions& opt = {}, std::uint64_t start_seed = 0) {
  detail::require_rho_above_one(rho);
  const std::size_t n = start.size();
  if (n < 2) throw InvalidParam("ascent needs n >= 2");
  const double r2 = rho * rho;
  const double bound = cassels_log_bound(static_cast<int>(n), rho);

  std::vector<double> x(start.angles().begin(), start.angles().end());
  const double pin = x[0];
  for (auto& v : x) v -= pin;

  std::vector<double> g(n), x_new(n), g_new(n);
  auto project = [](std::vector<double>& grad) { grad[0] = 0.0; };
  auto inf_norm = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double e : v) m = std::max(m, std::abs(e));
    return m;
  };

  double f = detail::raw_objective(x, r2);
  detail::raw_gradient(x, r2, g);
  project(g);

  OptimizationResult res;
  res.start_seed = start_seed;
  res.max_bound_excess = f - bound;
  double step = opt.initial_step;
  int iter = 0;
  for (; iter < opt.max_iterations; ++iter) {
    if (inf_norm(g) <= opt.gradient_tolerance) {
      res.converged = true;
      break;
    }
    double g2 = 0.0;
    for (double e : g) g2 += e * e;
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(f));

    double t = step;
    double f_new = f;
    bool accepted = false;
    while (t > 1e-30) {
      for (std::size_t i = 0; i < n; ++i) x_new[i] = x[i] + t * g[i];
      f_new = detail::raw_objective(x_new, r2);
      if (f_new >= f + opt.armijo * t * g2 - noise) {
        accepted = true;
        break;
      }
      t *= opt.shrink;
    }
    if (!accepted) break;

    detail::raw_gradient(x_new, r2, g_new);
    project(g_new);

    // BB1 step for ascent: s.s / -(s.y)
    double ss = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double s = x_new[i] - x[i];
      ss += s * s;
      sy -= s * (g_new[i] - g[i]);
    }
    step = (sy > 0.0 && ss > 0.0) ? std::clamp(ss / sy, 1e-10, 1e6) : opt.initial_step;

    x.swap(x_new);
    g.swap(g_new);
    f = f_new;
    res.max_bound_excess = std::max(res.max_bound_excess, f - bound);
  }

  res.iterations = iter;
  res.gradient_norm = inf_norm(g);
  if (!res.converged && res.gradient_norm <= opt.gradient_tolerance) res.converged = true;
  res.angles = TorusConfiguration(x);
  res.log_product = torus_log_objective(res.angles, rho);
  res.is_regular_ngon = detect_regular_ngon(res.angles, opt.polygon_tolerance);
  if (!res.converged) {
    res.status = OptimizationStatus::kIterationCap;
  } else if (bound - res.log_product > opt.nonglobal_gap) {
    res.status = OptimizationStatus::kNonGlobal;
  } else {
    res.status = OptimizationStatus::kGlobal;
  }
  return res;
}

inline TorusConfiguration random_torus(Rng& rng, std::size_t n) {
  std::vector<double> a(n);
  for (auto& v : a) v = rng.angle();
  return TorusConfiguration(std::move(a));
}

// Start s draws its angles from Rng(seed + s). Results are in start order.
inline std::vector<OptimizationResult> optimize_torus(int n, double rho, int starts, std::uint64_t seed,
                                                      const OptimizerOptions& opt = {}) {
  if (n < 2) throw InvalidParam("optimize_torus needs n >= 2");
  detail::require_rho_above_one(rho);
  if (starts < 1) throw InvalidParam("starts must be >= 1");

  std::vector<OptimizationResult> results(static_cast<std::size_t>(starts));
  parallel_for(results.size(), [&](std::size_t s) {
    const std::uint64_t start_seed = seed + s;
    Rng rng(start_seed);
    results[s] = ascend_torus(random_torus(rng, static_cast<std::size_t>(n)), rho, opt, start_seed);
  });
  return results;
}

// Highest log_product; ties resolved towards the lower start index.
inline const OptimizationResult& best_result(const std::vector<OptimizationResult>& results) {
  if (results.empty()) throw InvalidParam("no optimization results");
  auto it = std::max_element(results.begin(), results.end(), [](const auto& a, const auto& b) {
    return a.log_product < b.log_product;
  });
  return *it;
}

struct BasinCounts {
  int global = 0;
  int nonglobal = 0;
  int capped = 0;
};

inline BasinCounts count_basins(const std::vector<OptimizationResult>& results) {
  BasinCounts c;
  for (const auto& r : results) {
    switch (r.status) {
      case OptimizationStatus::kGlobal: ++c.global; break;
      case OptimizationStatus::kNonGlobal: ++c.nonglobal; break;
      case OptimizationStatus::kIterationCap: ++c.capped; break;
    }
  }
  return c;
}

namespace detail {

struct ArgMax {
  double x;
  double value;
};

// Golden-section search for a maximum of fn on [lo, hi].
inline ArgMax golden_section_max(const std::function<double(double)>& fn, double lo, double hi,
                                 int iterations = 60) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = fn(c), fd = fn(d);
  for (int i = 0; i < iterations; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = fn(d);
    }
  }
  return fc >= fd ? ArgMax{c, fc} : ArgMax{d, fd};
}

// Grid scan of fn over a full turn followed by golden-section refinement
// around the best node.
inline ArgMax circle_argmax(const std::function<double(double)>& fn, int grid) {
  ArgMax best{0.0, -std::numeric_limits<double>::infinity()};
  const double h = kTwoPi / grid;
  for (int i = 0; i < grid; ++i) {
    const double phi = h * i;
    const double v = fn(phi);
    if (v > best.value) best = {phi, v};
  }
  const ArgMax refined = golden_section_max(fn, best.x - h, best.x + h);
  return refined.value > best.value ? refined : best;
}

}  // namespace detail

// Moves each point in turn onto |z| = rho, at the angle maximizing
// prod_{j != k} |1 - conj(z_j) z_k| with the other points held fixed. By the
// maximum modulus principle that boundary maximum is at least the current
// value; if the search misses it the angular grid is refined.
inline DiscConfiguration push_to_boundary(const DiscConfiguration& cfg, int angle_grid = 64) {
  if (angle_grid < 16) throw InvalidParam("angle_grid must be >= 16");
  std::vector<Complex> pts(cfg.points().begin(), cfg.points().end());
  const double rho = cfg.rho();
  const std::size_t n = pts.size();

  auto partial = [&](std::size_t k, Complex zk) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != k) s += std::log(std::abs(1.0 - std::conj(pts[j]) * zk));
    }
    return s;
  };

  for (std::size_t k = 0; k < n; ++k) {
    const double current = partial(k, pts[k]);
    std::function<double(double)> on_circle = [&](double phi) { return partial(k, std::polar(rho, phi)); };
    int grid = angle_grid;
    detail::ArgMax best = detail::circle_argmax(on_circle, grid);
    // A point already on the circle is its own candidate, kept verbatim, so
    // boundary input is at worst a self-map.
    if (std::abs(std::abs(pts[k]) - rho) <= kBoundaryTolerance && current >= best.value) continue;
    while (best.value < current) {
      if (grid >= (1 << 22)) {
        throw std::logic_error("boundary push failed to ascend at point " + std::to_string(k));
      }
      grid *= 4;
      const detail::ArgMax finer = detail::circle_argmax(on_circle, grid);
      if (finer.value > best.value) best = finer;
    }
    pts[k] = std::polar(rho, best.x);
  }
  return DiscConfiguration(std::move(pts), rho);
}

// e_degree of the n(n-1)/2 squared chords |w_j - w_k|^2, j < k.
inline double chord_symmetric_value(const TorusConfiguration& tcfg, int degree) {
  const std::size_t n = tcfg.size();
  std::vector<double> chords;
  chords.reserve(n * (n - 1) / 2);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) chords.push_back(squared_chord(tcfg.angle(j), tcfg.angle(k)));
  }
  if (degree < 0 || static_cast<std::size_t>(degree) > chords.size()) {
    throw InvalidParam("degree out of range");
  }
  return elementary_symmetric(chords)[static_cast<std::size_t>(degree)];
}

struct SymmetricSearchOptions {
  int polish_steps = 100;
  int polish_grid = 24;
  // Exceedance is relative to max(1, regular value).
  double exceed_tolerance = 1e-12;
};

struct SymmetricSearchRecord {
  int n = 0;
  int degree = 0;
  double best_value = 0.0;
  double regular_ngon_value = 0.0;
  TorusConfiguration best_angles;
  long trials = 0;
  double excess = 0.0;  // best_value - regular_ngon_value
  bool exceeds = false;
  // Degrees 1 through 4 are settled, so exceedance there is a bug, not a finding.
  bool proved_degree = false;
};

// Coordinate-wise polish: for each sweep, each angle but the first is moved to
// the maximizer of the value along its own circle if that improves the value.
inline TorusConfiguration polish_symmetric(TorusConfiguration start, int degree, int steps, int grid) {
  std::vector<double> theta(start.angles().begin(), start.angles().end());
  const std::size_t n = theta.size();
  auto value_at = [&](const std::vector<double>& a) { return chord_symmetric_value(TorusConfiguration(a), degree); };
  double current = value_at(theta);
  for (int s = 0; s < steps; ++s) {
    bool moved = false;
    for (std::size_t k = 1; k < n; ++k) {
      std::vector<double> trial = theta;
      std::function<double(double)> fn = [&](double phi) {
        trial[k] = phi;
        return value_at(trial);
      };
      const detail::ArgMax best = detail::circle_argmax(fn, grid);
      if (best.value > current) {
        theta[k] = best.x;
        current = best.value;
        moved = true;
      }
    }
    if (!moved) break;
  }
  return TorusConfiguration(std::move(theta));
}

inline SymmetricSearchRecord symmetric_function_search(int n, int degree, long trials, std::uint64_t seed,
                                                       const SymmetricSearchOptions& opt = {}) {
  if (n < 2) throw InvalidParam("n must be >= 2");
  const long pairs = static_cast<long>(n) * (n - 1) / 2;
  if (degree < 1 || degree > pairs) throw InvalidParam("degree must lie in [1, n(n-1)/2]");
  if (trials < 1) throw InvalidParam("trials must be >= 1");

  SymmetricSearchRecord rec;
  rec.n = n;
  rec.degree = degree;
  rec.trials = trials;
  rec.proved_degree = degree <= 4;
  rec.regular_ngon_value = chord_symmetric_value(TorusConfiguration::regular(static_cast<std::size_t>(n)), degree);

  std::vector<double> values(static_cast<std::size_t>(trials));
  parallel_for(values.size(), [&](std::size_t t) {
    Rng rng(seed + t);
    values[t] = chord_symmetric_value(random_torus(rng, static_cast<std::size_t>(n)), degree);
  });
  const auto best_it = std::max_element(values.begin(), values.end());
  const std::size_t best_index = static_cast<std::size_t>(best_it - values.begin());
  Rng replay(seed + best_index);
  TorusConfiguration best = random_torus(replay, static_cast<std::size_t>(n));

  best = polish_symmetric(std::move(best), degree, opt.polish_steps, opt.polish_grid);
  rec.best_value = chord_symmetric_value(best, degree);
  rec.best_angles = std::move(best);
  rec.excess = rec.best_value - rec.regular_ngon_value;
  rec.exceeds = rec.excess > opt.exceed_tolerance * std::max(1.0, std::abs(rec.regular_ngon_value));
  return rec;
}

}  // namespace extremal
