#pragma once

// The five report-producing commands behind the `extremal` CLI. Each returns a
// finalized ReportDocument; bad parameters or input raise UsageError.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "extremal/analytic.hpp"
#include "extremal/cassels.hpp"
#include "extremal/configuration.hpp"
#include "extremal/monotonicity.hpp"
#include "extremal/parallel.hpp"
#include "extremal/report.hpp"
#include "extremal/rng.hpp"
#include "extremal/search.hpp"

namespace extremal {

// Maps to exit status 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr double kIdentityTolerance = 1e-9;
inline constexpr double kInequalitySlack = 1e-12;
inline constexpr double kOptimizeTolerance = 1e-8;
// Random analytic pairs for the identities sweep are drawn from |z| <= 0.9.
inline constexpr double kIdentitiesRadius = 0.9;

// A configuration read from an input file. `torus` is set when the file gave
// angles; `analytic_scale` requests the unit-disc checks on z_j * scale / rho.
struct ConfigurationInput {
  DiscConfiguration disc;
  std::optional<TorusConfiguration> torus;
  std::optional<double> analytic_scale;
};

// {"rho": R, "points": [{"re": x, "im": y}, ...]} or {"rho": R, "angles": [...]},
// optionally with "analytic_scale": s in (0, 1).
inline ConfigurationInput parse_configuration(const Json& j) {
  try {
    if (!j.is_object()) throw UsageError("configuration must be a JSON object");
    if (!j.contains("rho") || !j.at("rho").is_number()) throw UsageError("\"rho\" must be a number");
    const double rho = j.at("rho").get<double>();
    if (!(std::isfinite(rho) && rho > 1.0)) throw UsageError("\"rho\" must be > 1");
    const bool has_points = j.contains("points");
    const bool has_angles = j.contains("angles");
    if (has_points == has_angles) throw UsageError("exactly one of \"points\" or \"angles\" is required");

    std::optional<double> scale;
    if (j.contains("analytic_scale")) {
      if (!j.at("analytic_scale").is_number()) throw UsageError("\"analytic_scale\" must be a number");
      scale = j.at("analytic_scale").get<double>();
      if (!(*scale > 0.0 && *scale < 1.0)) throw UsageError("\"analytic_scale\" must lie in (0, 1)");
    }

    if (has_angles) {
      const auto& arr = j.at("angles");
      if (!arr.is_array() || arr.empty()) throw UsageError("\"angles\" must be a non-empty array");
      std::vector<double> angles;
      for (const auto& a : arr) {
        if (!a.is_number()) throw UsageError("angles must be numbers");
        angles.push_back(a.get<double>());
      }
      TorusConfiguration torus(std::move(angles));
      return {DiscConfiguration::on_circle(torus, rho), torus, scale};
    }

    const auto& arr = j.at("points");
    if (!arr.is_array() || arr.empty()) throw UsageError("\"points\" must be a non-empty array");
    std::vector<Complex> pts;
    for (const auto& p : arr) {
      if (!p.is_object() || !p.contains("re") || !p.contains("im") || !p.at("re").is_number() ||
          !p.at("im").is_number()) {
        throw UsageError("points must be objects {\"re\": x, \"im\": y}");
      }
      pts.emplace_back(p.at("re").get<double>(), p.at("im").get<double>());
    }
    return {DiscConfiguration(std::move(pts), rho), std::nullopt, scale};
  } catch (const InvalidParam& e) {
    throw UsageError(e.what());
  }
}

inline ConfigurationInput read_configuration(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open input file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  Json j;
  try {
    j = Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw UsageError(std::string("malformed JSON: ") + e.what());
  }
  return parse_configuration(j);
}

namespace detail {

inline RunManifest make_manifest(std::string command, std::uint64_t seed) {
  RunManifest m;
  m.command = std::move(command);
  m.seed = seed;
  m.timestamp = utc_timestamp();
  return m;
}

inline Json angles_json(const TorusConfiguration& t) {
  Json a = Json::array();
  for (double v : t.angles()) a.push_back(v);
  return a;
}

inline Check signed_check(std::string name, double computed, double reference, double gap, double tol) {
  return Check{std::move(name), gap >= -tol, computed, reference, gap, tol};
}

}  // namespace detail

inline ReportDocument cmd_verify(const ConfigurationInput& input, double tol = kIdentityTolerance,
                                 const std::string& input_label = "") {
  if (!(tol > 0.0)) throw UsageError("--tol must be positive");
  ReportDocument doc;
  doc.manifest = detail::make_manifest("verify", 0);
  const auto& disc = input.disc;
  const int n = static_cast<int>(disc.size());
  doc.manifest.parameters["input"] = input_label;
  doc.manifest.parameters["n"] = n;
  doc.manifest.parameters["rho"] = disc.rho();
  if (input.analytic_scale) doc.manifest.parameters["analytic_scale"] = *input.analytic_scale;
  doc.manifest.tolerances["identity"] = tol;
  doc.manifest.tolerances["inequality"] = kInequalitySlack;
  doc.manifest.tolerances["equality"] = tol;

  try {
    auto main = verify_main_inequality(disc, tol);
    Check& c = main.checks.front();
    c.pass = c.gap >= -kInequalitySlack;
    c.tolerance = kInequalitySlack;
    doc.add(main);
    doc.data["log_product"] = c.computed.real();
    doc.data["log_bound"] = c.reference.real();
    doc.data["gap"] = c.gap;
    doc.data["equality"] = main.equality;
    if (!c.pass) doc.findings.push_back("pairwise product exceeds the closed-form bound (gap " + std::to_string(c.gap) + ")");
  } catch (const DegenerateFactor& e) {
    // A vanishing factor gives product 0, which satisfies the bound.
    doc.checks.push_back(Check{"main_inequality", true, -std::numeric_limits<double>::infinity(),
                               cassels_log_bound(n, disc.rho()), std::numeric_limits<double>::infinity(),
                               kInequalitySlack});
    doc.data["degenerate_factor"] = {e.j(), e.k()};
    doc.data["equality"] = false;
  }

  const bool boundary = input.torus.has_value() || disc.on_boundary();
  doc.data["on_boundary"] = boundary;
  if (boundary) {
    const TorusConfiguration torus = input.torus ? *input.torus : disc.angles();
    doc.add(dubickas_factorization_check(torus, disc.rho(), tol));
    doc.data["is_regular_ngon"] = detect_regular_ngon(torus, kDefaultPolygonTolerance);
    doc.manifest.tolerances["polygon"] = kDefaultPolygonTolerance;
  }

  if (input.analytic_scale) {
    std::vector<Complex> scaled;
    for (const auto& z : disc.points()) scaled.push_back(z * (*input.analytic_scale / disc.rho()));
    const AnalyticPair pair(std::move(scaled));
    try {
      const auto cauchy = verify_cauchy_identities(pair, tol);
      doc.add(cauchy);
      doc.data["quadrature_nodes"] = cauchy.quadrature_nodes;
    } catch (const NoConvergence& e) {
      doc.checks.push_back(Check{"cauchy_identities", false, 0.0, 0.0, e.last_difference(), tol});
    }
    const auto add = verify_additive_inequality(pair, kAdditiveTolerance);
    doc.checks.push_back(detail::signed_check("additive_inequality", add.sum_value, add.bound_value, add.gap,
                                              kAdditiveTolerance));
    doc.data["additive_equality"] = add.equality;
    doc.manifest.tolerances["additive"] = kAdditiveTolerance;
    if (!add.passed) doc.findings.push_back("additive inequality violated on the scaled configuration");
  }

  doc.finalize();
  return doc;
}

inline ReportDocument cmd_verify(const std::filesystem::path& input_path, double tol = kIdentityTolerance) {
  return cmd_verify(read_configuration(input_path), tol, input_path.string());
}

inline ReportDocument cmd_optimize(int n, double rho, int starts, std::uint64_t seed,
                                   double tol = kOptimizeTolerance) {
  if (n < 2) throw UsageError("--n must be >= 2");
  if (!(std::isfinite(rho) && rho > 1.0)) throw UsageError("--rho must be > 1");
  if (starts < 1) throw UsageError("--starts must be >= 1");
  if (!(tol > 0.0)) throw UsageError("--tol must be positive");

  const OptimizerOptions opt;
  ReportDocument doc;
  doc.manifest = detail::make_manifest("optimize", seed);
  doc.manifest.parameters["n"] = n;
  doc.manifest.parameters["rho"] = rho;
  doc.manifest.parameters["starts"] = starts;
  doc.manifest.parameters["initial_step"] = opt.initial_step;
  doc.manifest.parameters["shrink"] = opt.shrink;
  doc.manifest.parameters["armijo"] = opt.armijo;
  doc.manifest.parameters["max_iterations"] = opt.max_iterations;
  doc.manifest.tolerances["bound_gap"] = tol;
  doc.manifest.tolerances["gradient"] = opt.gradient_tolerance;
  doc.manifest.tolerances["polygon"] = opt.polygon_tolerance;
  doc.manifest.tolerances["rail"] = opt.rail_slack;
  doc.manifest.tolerances["nonglobal_gap"] = opt.nonglobal_gap;

  const auto results = optimize_torus(n, rho, starts, seed, opt);
  const auto& best = best_result(results);
  const double bound = cassels_log_bound(n, rho);
  const double gap = bound - best.log_product;

  doc.checks.push_back(Check{"best_attains_bound", std::abs(gap) <= tol, best.log_product, bound, gap, tol});
  const double dev = regular_ngon_deviation(best.angles);
  doc.checks.push_back(
      Check{"best_is_regular_ngon", dev <= opt.polygon_tolerance, dev, 0.0, dev, opt.polygon_tolerance});
  double excess = -std::numeric_limits<double>::infinity();
  for (const auto& r : results) excess = std::max(excess, r.max_bound_excess);
  doc.checks.push_back(Check{"bound_rail", excess <= opt.rail_slack, excess, 0.0, excess, opt.rail_slack});
  if (excess > opt.rail_slack) {
    doc.findings.push_back("an iterate exceeded the closed-form bound by " + std::to_string(excess));
  }

  const auto basins = count_basins(results);
  Json best_json = Json::object();
  best_json["start_index"] = static_cast<std::size_t>(&best - results.data());
  best_json["start_seed"] = best.start_seed;
  best_json["angles"] = detail::angles_json(best.angles);
  best_json["log_product"] = best.log_product;
  best_json["gap_to_bound"] = gap;
  best_json["gradient_norm"] = best.gradient_norm;
  best_json["iterations"] = best.iterations;
  best_json["status"] = to_string(best.status);
  best_json["is_regular_ngon"] = best.is_regular_ngon;
  doc.data["log_bound"] = bound;
  doc.data["best"] = best_json;
  doc.data["basins"] = {{"converged", basins.global}, {"converged_to_nonglobal", basins.nonglobal},
                        {"iteration_cap", basins.capped}};
  Json runs = Json::array();
  for (const auto& r : results) {
    runs.push_back({{"start_seed", r.start_seed},
                    {"log_product", r.log_product},
                    {"gradient_norm", r.gradient_norm},
                    {"iterations", r.iterations},
                    {"status", to_string(r.status)},
                    {"is_regular_ngon", r.is_regular_ngon}});
  }
  doc.data["starts"] = std::move(runs);
  doc.finalize();
  return doc;
}

namespace detail {

struct IdentityTrial {
  double cauchy_gap = 0.0;
  std::size_t quadrature_nodes = 0;
  bool quadrature_failed = false;
  double additive_slack = 0.0;         // random pair: sum - bound
  double generated_additive_gap = 0.0;  // |sum - bound| on the equality pair
  bool generated_equality_flag = false;
  double generated_equality_function = 0.0;
  double generated_relations = 0.0;
  double rational_forms = 0.0;
  int equivalence_mismatches = 0;
};

// max_{1 <= m <= n-1} |e_m|
inline double inner_symmetric_size(const AnalyticPair& pair) {
  const auto e = elementary_symmetric(pair.points());
  double m = 0.0;
  for (std::size_t i = 1; i + 1 < e.size(); ++i) m = std::max(m, std::abs(e[i]));
  return m;
}

inline IdentityTrial run_identity_trial(int n, std::uint64_t seed, double tol) {
  Rng rng(seed);
  std::vector<Complex> pts(static_cast<std::size_t>(n));
  for (auto& z : pts) z = rng.in_disc(kIdentitiesRadius);
  const AnalyticPair random_pair(std::move(pts));
  const double lambda_radius = std::pow(kIdentitiesRadius, n) * std::sqrt(rng.uniform());
  const AnalyticPair equality_pair = roots_of_zn_plus_lambda(n, std::polar(lambda_radius, rng.angle()));

  IdentityTrial t;
  for (const auto* pair : {&random_pair, &equality_pair}) {
    try {
      const auto r = verify_cauchy_identities(*pair, tol);
      t.cauchy_gap = std::max(t.cauchy_gap, r.max_gap());
      t.quadrature_nodes = std::max(t.quadrature_nodes, r.quadrature_nodes);
    } catch (const NoConvergence&) {
      t.quadrature_failed = true;
    }
    const auto rf = verify_rational_forms(*pair, build_PQR(*pair), 1e-10, seed);
    t.rational_forms = std::max(t.rational_forms, rf.max_gap());
    const bool function_equality = verify_equality_function(*pair, tol).equality;
    const bool symmetric_zero = inner_symmetric_size(*pair) <= tol;
    if (function_equality != symmetric_zero) ++t.equivalence_mismatches;
  }

  t.additive_slack = verify_additive_inequality(random_pair, kInequalitySlack).gap;
  const auto eq = verify_additive_inequality(equality_pair, kAdditiveTolerance);
  t.generated_additive_gap = std::abs(eq.gap);
  t.generated_equality_flag = eq.equality;
  t.generated_equality_function = verify_equality_function(equality_pair, tol).max_gap();
  t.generated_relations = verify_coefficient_relations(equality_pair, tol).max_gap();
  return t;
}

}  // namespace detail

inline ReportDocument cmd_identities(int n, int trials, std::uint64_t seed, double tol = kIdentityTolerance) {
  if (n < 1) throw UsageError("--n must be >= 1");
  if (trials < 0) throw UsageError("--trials must be >= 0");
  if (!(tol > 0.0)) throw UsageError("--tol must be positive");

  ReportDocument doc;
  doc.manifest = detail::make_manifest("identities", seed);
  doc.manifest.parameters["n"] = n;
  doc.manifest.parameters["trials"] = trials;
  doc.manifest.parameters["disc_radius"] = kIdentitiesRadius;
  doc.manifest.tolerances["identity"] = tol;
  doc.manifest.tolerances["inequality"] = kInequalitySlack;
  doc.manifest.tolerances["additive_equality"] = kAdditiveTolerance;
  doc.manifest.tolerances["rational_forms"] = 1e-10;

  std::vector<detail::IdentityTrial> results(static_cast<std::size_t>(trials));
  parallel_for(results.size(), [&](std::size_t i) { results[i] = detail::run_identity_trial(n, seed + i, tol); });

  if (trials > 0) {
    double cauchy = 0.0, slack = std::numeric_limits<double>::infinity(), eq_gap = 0.0, eq_fn = 0.0,
           relations = 0.0, rational = 0.0;
    std::size_t nodes = 0;
    int quad_failures = 0, mismatches = 0, flagged = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& t = results[i];
      cauchy = std::max(cauchy, t.cauchy_gap);
      nodes = std::max(nodes, t.quadrature_nodes);
      quad_failures += t.quadrature_failed ? 1 : 0;
      slack = std::min(slack, t.additive_slack);
      eq_gap = std::max(eq_gap, t.generated_additive_gap);
      flagged += t.generated_equality_flag ? 1 : 0;
      eq_fn = std::max(eq_fn, t.generated_equality_function);
      relations = std::max(relations, t.generated_relations);
      rational = std::max(rational, t.rational_forms);
      mismatches += t.equivalence_mismatches;
      if (t.additive_slack < -kInequalitySlack) {
        doc.findings.push_back("trial " + std::to_string(i) + ": additive inequality violated by " +
                               std::to_string(-t.additive_slack));
      }
      if (t.quadrature_failed) doc.findings.push_back("trial " + std::to_string(i) + ": quadrature did not converge");
    }
    doc.checks.push_back(Check{"cauchy_identities", cauchy <= tol && quad_failures == 0, cauchy, 0.0, cauchy, tol});
    doc.checks.push_back(detail::signed_check("additive_inequality", slack, 0.0, slack, kInequalitySlack));
    doc.checks.push_back(Check{"additive_equality_generated", eq_gap <= kAdditiveTolerance && flagged == trials,
                               eq_gap, 0.0, eq_gap, kAdditiveTolerance});
    doc.checks.push_back(Check{"equality_function_generated", eq_fn <= tol, eq_fn, 0.0, eq_fn, tol});
    doc.checks.push_back(Check{"coefficient_relations_generated", relations <= tol, relations, 0.0, relations, tol});
    doc.checks.push_back(Check{"rational_forms", rational <= 1e-10, rational, 0.0, rational, 1e-10});
    doc.checks.push_back(Check{"equality_equivalence", mismatches == 0, static_cast<double>(mismatches), 0.0,
                               static_cast<double>(mismatches), 0.0});
    doc.data["max_quadrature_nodes"] = nodes;
    doc.data["generated_equality_flags"] = flagged;
  }
  doc.data["trials"] = trials;
  doc.finalize();
  return doc;
}

inline ReportDocument cmd_scan_g(int n, std::uint64_t seed, int grid, double a_max,
                                 const std::optional<TorusConfiguration>& angles = std::nullopt) {
  if (!angles && n < 1) throw UsageError("--n must be >= 1");
  if (grid < 2) throw UsageError("--grid must be >= 2");
  if (!(a_max > 0.0 && a_max < 1.0)) throw UsageError("--a-max must lie in (0, 1)");

  TorusConfiguration omega;
  if (angles) {
    omega = *angles;
  } else {
    Rng rng(seed);
    omega = random_torus(rng, static_cast<std::size_t>(n));
  }

  ReportDocument doc;
  doc.manifest = detail::make_manifest("scan-g", seed);
  doc.manifest.parameters["n"] = omega.size();
  doc.manifest.parameters["grid"] = grid;
  doc.manifest.parameters["a_max"] = a_max;
  doc.manifest.parameters["angles_source"] = angles ? "input" : "random";
  doc.manifest.tolerances["monotone_slack"] = kMonotoneSlack;

  const auto curve = scan_monotonicity(omega, grid, a_max);
  doc.checks.push_back(Check{"g_at_zero", curve.g_values.front() == 0.0, curve.g_values.front(), 0.0,
                             std::abs(curve.g_values.front()), 0.0});
  doc.checks.push_back(Check{"g_nondecreasing", curve.worst_decrease <= kMonotoneSlack, curve.worst_decrease, 0.0,
                             curve.worst_decrease, kMonotoneSlack});
  doc.checks.push_back(
      detail::signed_check("gprime_nonnegative", curve.min_gprime, 0.0, curve.min_gprime, kMonotoneSlack));
  if (!curve.monotone) doc.findings.push_back("g is not nondecreasing on the scanned grid");

  doc.data["angles"] = detail::angles_json(omega);
  doc.data["is_regular_ngon"] = detect_regular_ngon(omega, kDefaultPolygonTolerance);
  doc.data["a"] = curve.a_grid;
  doc.data["g"] = curve.g_values;
  doc.data["gprime_a"] = std::vector<double>(curve.a_grid.begin() + 1, curve.a_grid.end());
  doc.data["gprime"] = curve.gprime_values;
  doc.finalize();
  return doc;
}

inline ReportDocument cmd_dubickas(int n, int degree, long trials, std::uint64_t seed) {
  if (n < 2) throw UsageError("--n must be >= 2");
  const long pairs = static_cast<long>(n) * (n - 1) / 2;
  if (degree < 1 || degree > pairs) throw UsageError("--degree must lie in [1, n(n-1)/2]");
  if (trials < 1) throw UsageError("--trials must be >= 1");

  const SymmetricSearchOptions opt;
  ReportDocument doc;
  doc.manifest = detail::make_manifest("dubickas", seed);
  doc.manifest.parameters["n"] = n;
  doc.manifest.parameters["degree"] = degree;
  doc.manifest.parameters["trials"] = trials;
  doc.manifest.parameters["polish_steps"] = opt.polish_steps;
  doc.manifest.tolerances["exceed_relative"] = opt.exceed_tolerance;

  const auto rec = symmetric_function_search(n, degree, trials, seed, opt);
  const double tol = opt.exceed_tolerance * std::max(1.0, std::abs(rec.regular_ngon_value));
  if (rec.proved_degree) {
    doc.checks.push_back(Check{"regular_ngon_not_exceeded", !rec.exceeds, rec.best_value, rec.regular_ngon_value,
                               rec.regular_ngon_value - rec.best_value, tol});
    if (rec.exceeds) doc.findings.push_back("regular n-gon value exceeded at a settled degree (implementation bug)");
  }
  doc.data["degree"] = degree;
  doc.data["best_value"] = rec.best_value;
  doc.data["regular_ngon_value"] = rec.regular_ngon_value;
  doc.data["excess"] = rec.excess;
  doc.data["exceeds"] = rec.exceeds;
  doc.data["best_angles"] = detail::angles_json(rec.best_angles);
  doc.data["best_is_regular_ngon"] = detect_regular_ngon(rec.best_angles, kDefaultPolygonTolerance);
  if (!rec.proved_degree) {
    doc.data["observation"] = rec.exceeds ? "candidate counterexample: a configuration beats the regular n-gon"
                                          : "no configuration beat the regular n-gon";
  }
  doc.finalize();
  return doc;
}

}  // namespace extremal
