// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "extremal/extremal.hpp"

using namespace extremal;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// 1. regular n-gons hit the bound
Outcome equality_reproduction() {
  double worst = 0.0;
  for (int n = 2; n <= 8; ++n) {
    for (double rho : {1.1, 2.0, 10.0}) {
      const auto cfg = DiscConfiguration::regular_polygon(static_cast<std::size_t>(n), rho, 0.3 * n);
      worst = std::max(worst, std::abs(log_pairwise_product(cfg) - cassels_log_bound(n, rho)));
    }
  }
  return {worst <= 1e-9, fmt("max |log product - log bound| = %.3g (tol 1e-9)", worst)};
}

// 2. random disc configurations never beat the bound
Outcome inequality_sweep() {
  double worst = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 2000;
  for (int n = 2; n <= 6; ++n) {
    for (double rho : {1.5, 3.0}) {
      std::vector<double> gaps(10000);
      const std::uint64_t base = seed;
      parallel_for(gaps.size(), [&](std::size_t i) {
        Rng rng(base + i);
        std::vector<Complex> pts(static_cast<std::size_t>(n));
        for (auto& z : pts) z = rng.in_disc(rho);
        const DiscConfiguration cfg(std::move(pts), rho);
        try {
          gaps[i] = cassels_log_bound(n, rho) - log_pairwise_product(cfg);
        } catch (const DegenerateFactor&) {
          gaps[i] = std::numeric_limits<double>::infinity();
        }
      });
      seed += gaps.size();
      worst = std::min(worst, *std::min_element(gaps.begin(), gaps.end()));
    }
  }
  return {worst >= -1e-12, fmt("min gap over 1e5 configurations = %.6g (need >= -1e-12)", worst)};
}

// 3. multi-start ascent finds the regular n-gon
Outcome optimizer_recovery() {
  double worst_gap = 0.0, worst_dev = 0.0;
  bool all_regular = true;
  for (int n = 3; n <= 8; ++n) {
    for (double rho : {1.5, 3.0}) {
      const auto results = optimize_torus(n, rho, 50, 42);
      const auto& best = best_result(results);
      worst_gap = std::max(worst_gap, std::abs(cassels_log_bound(n, rho) - best.log_product));
      worst_dev = std::max(worst_dev, regular_ngon_deviation(best.angles));
      all_regular = all_regular && detect_regular_ngon(best.angles, 1e-5);
    }
  }
  return {worst_gap <= 1e-8 && all_regular,
          fmt("max best gap = %.3g (tol 1e-8), max polygon deviation = %.3g (tol 1e-5)", worst_gap, worst_dev)};
}

// 4. additive inequality and its equality case
Outcome additive_inequality() {
  std::vector<double> slack(10000);
  parallel_for(slack.size(), [&](std::size_t i) {
    Rng rng(4000 + i);
    const int n = 1 + static_cast<int>(i % 8);
    std::vector<Complex> pts(static_cast<std::size_t>(n));
    for (auto& z : pts) z = rng.in_disc(0.95);
    slack[i] = verify_additive_inequality(AnalyticPair(std::move(pts))).gap;
  });
  const double min_slack = *std::min_element(slack.begin(), slack.end());

  double worst_eq = 0.0;
  bool flags = true;
  for (int n = 1; n <= 8; ++n) {
    Rng rng(4400 + static_cast<std::uint64_t>(n));
    for (int t = 0; t < 100; ++t) {
      const Complex lambda = rng.in_disc(std::pow(0.95, n));
      const auto r = verify_additive_inequality(roots_of_zn_plus_lambda(n, lambda), 1e-10);
      worst_eq = std::max(worst_eq, std::abs(r.gap));
      flags = flags && r.equality;
    }
  }
  return {min_slack >= -1e-10 && worst_eq <= 1e-10 && flags,
          fmt("min slack over 1e4 pairs = %.6g (need >= -1e-10), max equality gap = %.3g (tol 1e-10)", min_slack,
              worst_eq)};
}

// 5. circle-mean identities with adaptive quadrature
Outcome cauchy_suite() {
  std::vector<double> gaps(600);
  std::vector<std::size_t> nodes(600);
  std::vector<int> failed(600, 0);
  parallel_for(gaps.size(), [&](std::size_t i) {
    Rng rng(5000 + i);
    const int n = 1 + static_cast<int>(i / 100);
    std::vector<Complex> pts(static_cast<std::size_t>(n));
    for (auto& z : pts) z = rng.in_disc(0.9);
    try {
      const auto r = verify_cauchy_identities(AnalyticPair(std::move(pts)), 1e-9);
      gaps[i] = r.max_gap();
      nodes[i] = r.quadrature_nodes;
      failed[i] = r.passed() ? 0 : 1;
    } catch (const NoConvergence& e) {
      gaps[i] = e.last_difference();
      nodes[i] = e.node_count();
      failed[i] = 1;
    }
  });
  const double worst = *std::max_element(gaps.begin(), gaps.end());
  const std::size_t max_nodes = *std::max_element(nodes.begin(), nodes.end());
  const int failures = std::count(failed.begin(), failed.end(), 1);
  return {failures == 0 && max_nodes < (std::size_t{1} << 16),
          fmt("failures = %.0f, max gap = %.3g (tol 1e-9), max nodes = %.0f (< 65536)", failures, worst,
              static_cast<double>(max_nodes))};
}

// 6. closed-form derivative of the potential
Outcome derivative_identity() {
  std::vector<double> dev(1000), gp(1000);
  parallel_for(dev.size(), [&](std::size_t i) {
    Rng rng(6000 + i);
    const auto n = static_cast<std::size_t>(1 + i % 8);
    const auto omega = random_torus(rng, n);
    const double a = rng.uniform(0.01, 0.95);
    const double h = 1e-6;
    const double fd = (g_value(omega, a + h) - g_value(omega, a - h)) / (2.0 * h);
    gp[i] = g_derivative(omega, a);
    dev[i] = std::abs(gp[i] - fd);
  });
  const double worst = *std::max_element(dev.begin(), dev.end());
  const double min_gp = *std::min_element(gp.begin(), gp.end());
  return {worst <= 1e-6 && min_gp >= -1e-10,
          fmt("max |g' - central difference| = %.3g (tol 1e-6), min g' = %.6g (need >= -1e-10)", worst, min_gp)};
}

// 7. boundary factorization into chord terms
Outcome factorization() {
  std::vector<double> gaps(1000);
  parallel_for(gaps.size(), [&](std::size_t i) {
    Rng rng(7000 + i);
    const auto n = static_cast<std::size_t>(2 + i % 7);
    const double rho = rng.uniform(1.01, 10.0);
    gaps[i] = dubickas_factorization_check(random_torus(rng, n), rho, 1e-10).max_gap();
  });
  const double worst = *std::max_element(gaps.begin(), gaps.end());
  return {worst <= 1e-10, fmt("max relative log gap = %.3g (tol 1e-10)", worst)};
}

// 8. chord symmetric functions of degree 1..4 never beat the regular n-gon
Outcome settled_degrees() {
  double worst = -std::numeric_limits<double>::infinity();
  int runs = 0;
  for (int n = 3; n <= 7; ++n) {
    for (int d = 1; d <= 4; ++d) {
      if (d > n * (n - 1) / 2) continue;
      const auto rec = symmetric_function_search(n, d, 100000, 8000 + static_cast<std::uint64_t>(10 * n + d));
      worst = std::max(worst, rec.best_value - rec.regular_ngon_value);
      ++runs;
    }
  }
  return {worst <= 1e-12, fmt("%.0f searches of 1e5 trials, max excess over regular value = %.3g (tol 1e-12)", runs,
                              worst)};
}

// 9. the bound gap is the potential at rho^-2; corollary sum is the additive sum
Outcome cross_module() {
  std::vector<double> g_dev(1000), sum_dev(1000);
  parallel_for(g_dev.size(), [&](std::size_t i) {
    Rng rng(9000 + i);
    const auto n = static_cast<std::size_t>(2 + i % 7);
    const auto omega = random_torus(rng, n);
    const double rho = rng.uniform(1.1, 5.0);
    const double gap =
        cassels_log_bound(static_cast<int>(n), rho) - log_pairwise_product(DiscConfiguration::on_circle(omega, rho));
    g_dev[i] = std::abs(gap - g_value(omega, 1.0 / (rho * rho)));

    // same a-range as the derivative check; the two sums agree to ~1/(1-a) ulps
    const double a = rng.uniform(0.01, 0.95);
    std::vector<Complex> scaled;
    for (std::size_t j = 0; j < n; ++j) scaled.push_back(std::sqrt(a) * omega.point(j));
    sum_dev[i] = std::abs(corollary_sum(omega, a) - additive_sum(AnalyticPair(std::move(scaled))));
  });
  const double gw = *std::max_element(g_dev.begin(), g_dev.end());
  const double sw = *std::max_element(sum_dev.begin(), sum_dev.end());
  return {gw <= 1e-10 && sw <= 1e-12,
          fmt("max |gap - g(rho^-2)| = %.3g (tol 1e-10), max |corollary - additive| = %.3g (tol 1e-12, a <= 0.95)", gw, sw)};
}

// 10. identical manifests give identical payloads
Outcome determinism() {
  const auto a = cmd_optimize(6, 1.5, 50, 20261016);
  const auto b = cmd_optimize(6, 1.5, 50, 20261016);
  const std::string pa = write_json(payload_json(a)), pb = write_json(payload_json(b));
  return {pa == pb, pa == pb ? "payloads byte-identical (" + std::to_string(pa.size()) + " bytes)"
                             : std::string("payloads differ")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double time_limit;  // seconds, <= 0 for none
  };
  const std::vector<Criterion> criteria = {
      {"equality reproduction", equality_reproduction, 1.0},
      {"inequality sweep", inequality_sweep, 30.0},
      {"optimizer recovery", optimizer_recovery, 120.0},
      {"additive inequality", additive_inequality, 0.0},
      {"circle-mean identities", cauchy_suite, 0.0},
      {"potential derivative", derivative_identity, 0.0},
      {"boundary factorization", factorization, 0.0},
      {"chord symmetric degrees 1-4", settled_degrees, 0.0},
      {"cross-module consistency", cross_module, 0.0},
      {"determinism", determinism, 0.0},
  };

  int failed = 0;
  double total = 0.0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    total += secs;
    if (criteria[i].time_limit > 0.0 && secs > criteria[i].time_limit) {
      o.pass = false;
      o.detail += fmt("; over time limit %.0f s", criteria[i].time_limit);
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %-28s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, secs,
                o.detail.c_str());
  }
  const bool in_time = total <= 300.0;
  if (!in_time) ++failed;
  std::printf("%s total runtime %.1fs (limit 300 s); %d criteria failed\n", in_time ? "PASS" : "FAIL", total, failed);
  return failed == 0 ? 0 : 1;
}
