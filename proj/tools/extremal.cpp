// Command-line front end: verify, optimize, identities, scan-g, dubickas.
// Exit status 0 = all checks pass, 1 = a check failed or something was found,
// 2 = bad usage or input.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "extremal/commands.hpp"

namespace {

int emit(const extremal::ReportDocument& doc, const std::string& output) {
  const std::string text = extremal::serialize(doc) + "\n";
  if (output.empty() || output == "-") {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) {
      std::cerr << "error: cannot write " << output << "\n";
      return 2;
    }
    out << text;
  }
  return doc.exit_status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks of the pairwise-product bound on discs and circles"};
  app.require_subcommand(1);

  std::string input, output;
  int n = 0, starts = 50, trials = 100, grid = 100, degree = 1;
  long search_trials = 10000;
  double rho = 2.0, tol = -1.0, a_max = extremal::kDefaultScanLimit;
  std::uint64_t seed = 0;

  auto* verify = app.add_subcommand("verify", "check a configuration file against the bound and identities");
  verify->add_option("--input", input, "configuration JSON")->required();
  verify->add_option("--tol", tol, "tolerance (default 1e-9)");
  verify->add_option("--output", output, "report path (default stdout)");

  auto* optimize = app.add_subcommand("optimize", "multi-start gradient ascent on the circle");
  optimize->add_option("--n", n, "number of points")->required();
  optimize->add_option("--rho", rho, "radius, > 1");
  optimize->add_option("--starts", starts, "random starts");
  optimize->add_option("--seed", seed, "base seed");
  optimize->add_option("--tol", tol, "allowed gap between best and bound (default 1e-8)");
  optimize->add_option("--output", output, "report path (default stdout)");

  auto* identities = app.add_subcommand("identities", "circle-mean identities and the additive inequality");
  identities->add_option("--n", n, "number of points")->required();
  identities->add_option("--trials", trials, "random pairs");
  identities->add_option("--seed", seed, "base seed");
  identities->add_option("--tol", tol, "identity tolerance (default 1e-9)");
  identities->add_option("--output", output, "report path (default stdout)");

  auto* scan = app.add_subcommand("scan-g", "sample the potential g and its derivative");
  scan->add_option("--n", n, "number of random angles");
  scan->add_option("--input", input, "configuration JSON with \"angles\" (overrides --n)");
  scan->add_option("--seed", seed, "seed for random angles");
  scan->add_option("--grid", grid, "grid points on [0, a_max]");
  scan->add_option("--a-max", a_max, "upper end of the grid, < 1");
  scan->add_option("--output", output, "report path (default stdout)");

  auto* dubickas = app.add_subcommand("dubickas", "search for chord symmetric-function maxima");
  dubickas->add_option("--n", n, "number of points")->required();
  dubickas->add_option("--degree", degree, "symmetric function degree")->required();
  dubickas->add_option("--trials", search_trials, "random trials");
  dubickas->add_option("--seed", seed, "base seed");
  dubickas->add_option("--output", output, "report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  auto tol_or = [&](double fallback) { return tol > 0.0 ? tol : fallback; };
  try {
    if (*verify) return emit(extremal::cmd_verify(input, tol_or(extremal::kIdentityTolerance)), output);
    if (*optimize) {
      return emit(extremal::cmd_optimize(n, rho, starts, seed, tol_or(extremal::kOptimizeTolerance)), output);
    }
    if (*identities) {
      return emit(extremal::cmd_identities(n, trials, seed, tol_or(extremal::kIdentityTolerance)), output);
    }
    if (*scan) {
      std::optional<extremal::TorusConfiguration> angles;
      if (!input.empty()) {
        auto cfg = extremal::read_configuration(input);
        if (!cfg.torus) throw extremal::UsageError("scan-g input must give \"angles\"");
        angles = *cfg.torus;
      }
      return emit(extremal::cmd_scan_g(n, seed, grid, a_max, angles), output);
    }
    if (*dubickas) return emit(extremal::cmd_dubickas(n, degree, search_trials, seed), output);
  } catch (const extremal::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const extremal::InvalidParam& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
