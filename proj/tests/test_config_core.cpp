#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "extremal/cassels.hpp"
#include "extremal/rng.hpp"
#include "oracles.hpp"

using namespace extremal;

namespace {

DiscConfiguration random_disc(Rng& rng, std::size_t n, double rho) {
  std::vector<Complex> pts(n);
  for (auto& z : pts) z = rng.in_disc(rho);
  return DiscConfiguration(std::move(pts), rho);
}

}  // namespace

TEST(DiscConfiguration, RejectsPointsBeyondTheRadius) {
  EXPECT_THROW(DiscConfiguration({Complex(2.0 + 2e-12, 0.0)}, 2.0), InvalidParam);
  EXPECT_NO_THROW(DiscConfiguration({Complex(2.0 + 5e-13, 0.0)}, 2.0));
  EXPECT_THROW(DiscConfiguration({}, 2.0), InvalidParam);
  EXPECT_THROW(DiscConfiguration({Complex(0.0)}, 0.5), InvalidParam);
  EXPECT_THROW(DiscConfiguration({Complex(NAN, 0.0)}, 2.0), InvalidParam);
}

TEST(TorusConfiguration, ReducesAngles) {
  const TorusConfiguration t({-kPi / 2, kTwoPi, 7.0});
  EXPECT_DOUBLE_EQ(t.angle(0), 1.5 * kPi);
  EXPECT_EQ(t.angle(1), 0.0);
  EXPECT_DOUBLE_EQ(t.angle(2), 7.0 - kTwoPi);
}

TEST(LogPairwiseProduct, SchurEqualityForAntipodalPair) {
  const DiscConfiguration cfg({Complex(1.0), Complex(-1.0)}, 1.0);
  EXPECT_NEAR(log_pairwise_product(cfg), std::log(4.0), 1e-15);
}

TEST(LogPairwiseProduct, SinglePointIsEmptyProduct) {
  EXPECT_EQ(log_pairwise_product(DiscConfiguration({Complex(0.3, 0.4)}, 2.0)), 0.0);
}

TEST(LogPairwiseProduct, AntipodalPairRadiusTwo) {
  const std::vector<Complex> z{2.0, -2.0};
  EXPECT_NEAR(std::exp(static_cast<double>(std::log(oracle::pairwise_product(z)))), 25.0, 1e-12);
  EXPECT_NEAR(log_pairwise_product(DiscConfiguration(z, 2.0)), std::log(25.0), 1e-14);
}

TEST(LogPairwiseProduct, MatchesLinearDomainOracle) {
  Rng rng(21);
  for (int trial = 0; trial < 500; ++trial) {
    const auto cfg = random_disc(rng, 1 + trial % 7, 1.0 + 3.0 * rng.uniform());
    const std::vector<Complex> z(cfg.points().begin(), cfg.points().end());
    EXPECT_NEAR(log_pairwise_product(cfg), static_cast<double>(std::log(oracle::pairwise_product(z))), 1e-11);
  }
}

TEST(LogPairwiseProduct, ReportsVanishingPair) {
  const DiscConfiguration cfg({Complex(0.1), Complex(2.0), Complex(0.5)}, 2.0);
  try {
    log_pairwise_product(cfg);
    FAIL() << "expected DegenerateFactor";
  } catch (const DegenerateFactor& e) {
    EXPECT_EQ(e.j(), 1u);
    EXPECT_EQ(e.k(), 2u);
  }
}

TEST(LogPairwiseProduct, RotationAndPermutationInvariant) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto cfg = random_disc(rng, 2 + trial % 6, 3.0);
    const double base = log_pairwise_product(cfg);
    std::vector<Complex> rotated(cfg.points().begin(), cfg.points().end());
    const Complex turn = std::polar(1.0, rng.angle());
    for (auto& z : rotated) z *= turn;
    std::vector<Complex> permuted(cfg.points().rbegin(), cfg.points().rend());
    std::rotate(permuted.begin(), permuted.begin() + 1, permuted.end());
    const double tol = 1e-13 * std::max(1.0, std::abs(base));
    // A rotation can nudge |z| past rho by an ulp; build with a generous radius.
    EXPECT_NEAR(log_pairwise_product(DiscConfiguration(rotated, 3.0 + 1e-13)), base, tol);
    EXPECT_NEAR(log_pairwise_product(DiscConfiguration(permuted, 3.0)), base, tol);
  }
}

TEST(CasselsLogBound, HandValues) {
  EXPECT_NEAR(cassels_log_bound(2, 2.0), std::log(25.0), 1e-14);
  EXPECT_EQ(cassels_log_bound(1, 7.5), 0.0);
  EXPECT_NEAR(cassels_log_bound(3, 2.0), std::log(9261.0), 1e-13);
}

TEST(CasselsLogBound, RejectsRadiusAtMostOne) {
  EXPECT_THROW(cassels_log_bound(3, 1.0), InvalidParam);
  EXPECT_THROW(cassels_log_bound(3, 0.5), InvalidParam);
  EXPECT_THROW(cassels_log_bound(0, 2.0), InvalidParam);
}

TEST(CasselsLogBound, NoOverflowWhereRawPowersOverflow) {
  // rho^{2n} = 10^{400} is past double range; long double still holds it.
  for (int n : {200, 500}) {
    const double v = cassels_log_bound(n, 10.0);
    ASSERT_TRUE(std::isfinite(v));
    const long double ref = oracle::cassels_log_bound(n, 10.0L);
    EXPECT_NEAR(v, static_cast<double>(ref), 1e-13 * static_cast<double>(ref));
  }
  // Near rho = 1 the ratio tends to n, so the bound tends to n log n.
  EXPECT_NEAR(cassels_log_bound(5, 1.0 + 1e-9), 5.0 * std::log(5.0), 1e-6);
}

TEST(BoundParams, CarriesLogBound) {
  const auto p = BoundParams::make(3, 2.0);
  EXPECT_EQ(p.n, 3);
  EXPECT_NEAR(p.log_bound, std::log(9261.0), 1e-13);
}

TEST(VerifyMainInequality, RegularTriangleAttainsBound) {
  const auto r = verify_main_inequality(DiscConfiguration::regular_polygon(3, 2.0, 0.4));
  EXPECT_TRUE(r.passed());
  EXPECT_TRUE(r.equality);
  EXPECT_LE(std::abs(r.checks.front().gap), 1e-12);
}

TEST(VerifyMainInequality, CentredPointsAreStrict) {
  const auto r = verify_main_inequality(DiscConfiguration(std::vector<Complex>(4, Complex(0.0)), 1.7));
  EXPECT_TRUE(r.passed());
  EXPECT_FALSE(r.equality);
  EXPECT_EQ(r.checks.front().computed.real(), 0.0);
  EXPECT_NEAR(r.checks.front().gap, cassels_log_bound(4, 1.7), 1e-15);
}

TEST(VerifyMainInequality, MonteCarloSweep) {
  Rng rng(2024);
  double worst = INFINITY;
  for (int i = 0; i < 10000; ++i) {
    const auto r = verify_main_inequality(random_disc(rng, 5, 3.0), 1e-12);
    ASSERT_TRUE(r.passed());
    worst = std::min(worst, r.checks.front().gap);
  }
  EXPECT_GT(worst, 0.0);
}

TEST(VerifyMainInequality, PropagatesDegenerateFactor) {
  EXPECT_THROW(verify_main_inequality(DiscConfiguration({Complex(2.0), Complex(0.5)}, 2.0)), DegenerateFactor);
}

TEST(EquivForm, HandValues) {
  EXPECT_NEAR(log_pairwise_product_equiv_form(TorusConfiguration({0.0, kPi}), 2.0), std::log(225.0 / 256.0), 1e-14);
  EXPECT_NEAR(log_pairwise_product_equiv_form(TorusConfiguration({0.0}), 2.0), std::log(0.75), 1e-15);
}

TEST(EquivForm, RegularPolygonMatchesRightHandSide) {
  for (int n = 1; n <= 9; ++n) {
    for (double rho : {1.1, 2.0, 10.0}) {
      const double rhs = n * std::log1p(-std::pow(rho, -2.0 * n));
      EXPECT_NEAR(log_pairwise_product_equiv_form(TorusConfiguration::regular(n, 0.3), rho), rhs, 1e-12);
    }
  }
}

TEST(EquivForm, AgreesWithScaledFullProduct) {
  Rng rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + trial % 8;
    std::vector<double> a(n);
    for (auto& v : a) v = rng.angle();
    const TorusConfiguration t(a);
    const double rho = 1.05 + 4.0 * rng.uniform();
    const double lhs = log_pairwise_product_equiv_form(t, rho);
    const double rhs = full_product_with_diagonal(DiscConfiguration::on_circle(t, rho)) -
                       2.0 * static_cast<double>(n * n) * std::log(rho);
    EXPECT_LE(std::abs(lhs - rhs), 1e-10 * std::max(1.0, std::abs(rhs)));
  }
}

TEST(FullProduct, HandValues) {
  EXPECT_NEAR(full_product_with_diagonal(DiscConfiguration({Complex(2.0), Complex(-2.0)}, 2.0)), std::log(225.0),
              1e-13);
  EXPECT_EQ(full_product_with_diagonal(DiscConfiguration({Complex(0.0)}, 2.0)), 0.0);
  EXPECT_NEAR(full_product_with_diagonal(DiscConfiguration::regular_polygon(4, 1.5)),
              4.0 * std::log(std::pow(1.5, 8) - 1.0), 1e-12);
}

TEST(FullProduct, UnitModulusDiagonalIsDegenerate) {
  try {
    full_product_with_diagonal(DiscConfiguration({Complex(0.2), Complex(0.0, 1.0)}, 2.0));
    FAIL() << "expected DegenerateFactor";
  } catch (const DegenerateFactor& e) {
    EXPECT_EQ(e.j(), 1u);
    EXPECT_EQ(e.k(), 1u);
  }
}

TEST(FullProduct, SplitsIntoPairwisePlusDiagonal) {
  Rng rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const auto cfg = random_disc(rng, 1 + trial % 6, 2.5);
    double diag = 0.0;
    for (const auto& z : cfg.points()) diag += std::log(std::abs(1.0 - std::norm(z)));
    EXPECT_NEAR(full_product_with_diagonal(cfg), log_pairwise_product(cfg) + diag, 1e-11);
  }
}

TEST(Conditions, HandValues) {
  EXPECT_TRUE(cassels_condition(2, 1.3));
  EXPECT_TRUE(cassels_condition(2, 50.0));
  EXPECT_FALSE(cassels_condition(3, 2.0));  // 0.5 > 4/13
  EXPECT_TRUE(cassels_condition(3, 1.05));  // rhs ~ 0.995
  EXPECT_FALSE(alexander_condition(3, 2.0));  // 0.5 > 8/17
  EXPECT_TRUE(alexander_condition(2, 9.0));
  EXPECT_TRUE(alexander_condition(3, 1.2));  // rhs ~ 0.938
  EXPECT_THROW(cassels_condition(3, 1.0), InvalidParam);
}

TEST(Conditions, CasselsImpliesAlexander) {
  for (int n = 1; n <= 40; ++n) {
    for (double rho = 1.001; rho < 5.0; rho += 0.003) {
      if (cassels_condition(n, rho)) {
        EXPECT_TRUE(alexander_condition(n, rho)) << n << " " << rho;
      }
    }
  }
}

TEST(DubickasFactorization, AntipodalPair) {
  const auto r = dubickas_factorization_check(TorusConfiguration({0.0, kPi}), 2.0);
  ASSERT_TRUE(r.passed());
  EXPECT_NEAR(r.checks.front().computed.real(), std::log(25.0), 1e-14);
  // 4 * (1.5^2 + 4) = 25
  EXPECT_NEAR(r.checks.front().reference.real(), std::log(4.0 * (2.25 + 4.0)), 1e-14);
}

TEST(DubickasFactorization, SinglePointBothSidesZero) {
  const auto r = dubickas_factorization_check(TorusConfiguration({1.0}), 3.0);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.checks.front().computed.real(), 0.0);
  EXPECT_EQ(r.checks.front().reference.real(), 0.0);
}

TEST(DubickasFactorization, MonteCarloSweep) {
  Rng rng(99);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + trial % 8;
    std::vector<double> a(n);
    for (auto& v : a) v = rng.angle();
    const double rho = (trial % 2 == 0) ? 1.1 : 5.0;
    const auto r = dubickas_factorization_check(TorusConfiguration(a), rho, 1e-10);
    ASSERT_TRUE(r.passed()) << "gap " << r.checks.front().gap;
  }
}

TEST(DubickasFactorization, CoincidentAnglesAreLegal) {
  EXPECT_TRUE(dubickas_factorization_check(TorusConfiguration({0.5, 0.5, 2.0}), 1.5, 1e-12).passed());
}
