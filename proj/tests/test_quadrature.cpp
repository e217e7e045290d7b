#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "rieszlab/quadrature.hpp"

using namespace rieszlab;

namespace {

// sigma-moments of S^{n-1}: E[zeta_1^2] = 1/n, E[zeta_1^4] = 3/(n(n+2)), E[zeta_1^2 zeta_2^2] = 1/(n(n+2)).
double second_moment(int n) { return 1.0 / n; }
double fourth_moment(int n) { return 3.0 / (n * (n + 2.0)); }
double mixed_moment(int n) { return 1.0 / (n * (n + 2.0)); }

}  // namespace

TEST(GaussRules, LegendreIntegratesPolynomialsExactly) {
  const Rule1D g = gauss_legendre(6, 0.0, 2.0);
  for (int k = 0; k <= 11; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * std::pow(g.nodes[i], k);
    EXPECT_NEAR(s, std::pow(2.0, k + 1) / (k + 1), 1e-12 * std::pow(2.0, k + 1)) << "k=" << k;
  }
}

TEST(GaussRules, JacobiWeightMassMatchesBetaFunction) {
  for (auto [a, b] : {std::pair{0.5, 0.5}, std::pair{0.0, 1.5}, std::pair{-0.5, 2.0}}) {
    const Rule1D g = gauss_jacobi(8, a, b);
    double s = 0.0;
    for (double w : g.weights) s += w;
    const double mass = std::exp((a + b + 1) * std::log(2.0) + std::lgamma(a + 1) + std::lgamma(b + 1) - std::lgamma(a + b + 2));
    EXPECT_NEAR(s, mass, 1e-13);
  }
}

TEST(GaussRules, RejectsBadArguments) {
  EXPECT_THROW(gauss_jacobi(0, 0.0, 0.0), InvalidArgument);
  EXPECT_THROW(gauss_jacobi(4, -1.0, 0.0), InvalidArgument);
}

TEST(SphereRule, NodesOnSphereAndWeightsNormalized) {
  for (int n = 2; n <= 5; ++n)
    for (int level = 1; level <= 3; ++level) {
      const SphereRule rule = sphere_rule(n, level);
      double s = 0.0;
      for (std::size_t i = 0; i < rule.size(); ++i) {
        EXPECT_NEAR(rule.nodes.col(static_cast<Eigen::Index>(i)).norm(), 1.0, 1e-14);
        EXPECT_GE(rule.weights[i], 0.0);
        s += rule.weights[i];
      }
      EXPECT_NEAR(s, 1.0, 1e-12) << "n=" << n << " level=" << level;
    }
}

TEST(SphereRule, IntegratesConstantExactly) {
  for (int n : {2, 3, 4}) {
    const Estimate e = integrate_sphere(sphere_rule(n, 2), [](const Eigen::VectorXd&) { return 1.0; });
    EXPECT_NEAR(e.value, 1.0, 1e-12);
  }
}

TEST(SphereRule, OddFunctionsIntegrateToZero) {
  for (int n : {2, 3, 4, 5}) {
    const SphereRule rule = sphere_rule(n, 2);
    EXPECT_NEAR(integrate_sphere(rule, [](const Eigen::VectorXd& z) { return z(0); }).value, 0.0, 1e-14);
    EXPECT_NEAR(integrate_sphere(rule, [](const Eigen::VectorXd& z) { return z(0) * z(1) * z(1); }).value, 0.0, 1e-14);
  }
}

TEST(SphereRule, ReproducesLowMoments) {
  for (int n : {2, 3, 4, 5}) {
    const SphereRule rule = sphere_rule(n, 2);
    EXPECT_NEAR(integrate_sphere(rule, [](const Eigen::VectorXd& z) { return z(0) * z(0); }).value, second_moment(n), 1e-13);
    EXPECT_NEAR(integrate_sphere(rule, [&](const Eigen::VectorXd& z) { return std::pow(z(n - 1), 4); }).value,
                fourth_moment(n), 1e-13);
    EXPECT_NEAR(integrate_sphere(rule, [](const Eigen::VectorXd& z) { return z(0) * z(0) * z(1) * z(1); }).value,
                mixed_moment(n), 1e-13);
  }
}

TEST(SphereRule, CircleRuleExactForTrigonometricPolynomials) {
  const SphereRule rule = sphere_rule(2, 2);  // 16 nodes
  for (int k = 1; k < 16; ++k) {
    const double c = integrate_sphere(rule, [k](const Eigen::VectorXd& z) { return std::cos(k * std::atan2(z(1), z(0))); }).value;
    EXPECT_NEAR(c, 0.0, 1e-12) << "k=" << k;
  }
  const double c2 = integrate_sphere(rule, [](const Eigen::VectorXd& z) { return std::pow(std::cos(std::atan2(z(1), z(0))), 2); }).value;
  EXPECT_NEAR(c2, 0.5, 1e-12);
}

TEST(SphereRule, RejectsBadArguments) {
  EXPECT_THROW(sphere_rule(1, 2), InvalidArgument);
  EXPECT_THROW(sphere_rule(3, 0), InvalidArgument);
}

TEST(SphereRule, NonFiniteIntegrandReportsNode) {
  const SphereRule rule = sphere_rule(3, 1);
  try {
    integrate_sphere(rule, [](const Eigen::VectorXd& z) { return z(0) > 0.0 ? std::nan("") : 0.0; });
    FAIL() << "expected EvaluationError";
  } catch (const EvaluationError& e) {
    ASSERT_EQ(e.node().size(), 3u);
    EXPECT_GT(e.node()[0], 0.0);
  }
}

TEST(MonteCarloRule, UnbiasedWithinStandardError) {
  const SphereRule rule = sphere_rule_monte_carlo(4, 1 << 14, 7);
  const Estimate one = integrate_sphere(rule, [](const Eigen::VectorXd&) { return 1.0; });
  EXPECT_NEAR(one.value, 1.0, 1e-12);
  EXPECT_NEAR(one.err, 0.0, 1e-9);
  const Estimate m2 = integrate_sphere(rule, [](const Eigen::VectorXd& z) { return z(0) * z(0); });
  EXPECT_GT(m2.err, 0.0);
  EXPECT_NEAR(m2.value, 0.25, 5.0 * m2.err);
}

TEST(MonteCarloRule, SameSeedSameNodes) {
  const SphereRule a = sphere_rule_monte_carlo(3, 100, 11);
  const SphereRule b = sphere_rule_monte_carlo(3, 100, 11);
  EXPECT_EQ(a.nodes, b.nodes);
}

TEST(BallRule, VolumeOfSubballs) {
  for (int n : {2, 3, 4}) {
    EXPECT_NEAR(integrate_ball(ball_rule(n, 1.0, 2, 1), [](const Eigen::VectorXd&) { return 1.0; }).value, 1.0, 1e-8);
    EXPECT_NEAR(integrate_ball(ball_rule(n, 0.6, 2, 1), [](const Eigen::VectorXd&) { return 1.0; }).value,
                std::pow(0.6, n), 1e-12);
  }
}

TEST(BallRule, RadialMoment) {
  // int_{B_r} |x|^2 dV_N = n r^{n+2} / (n+2)
  for (int n : {2, 3, 4}) {
    const double v = integrate_ball(ball_rule(n, 0.7, 2, 1), [](const Eigen::VectorXd& x) { return x.squaredNorm(); }).value;
    EXPECT_NEAR(v, n * std::pow(0.7, n + 2) / (n + 2.0), 1e-12);
  }
}

TEST(BallRule, PlanarGreenKernelAgainstClosedForm) {
  // 4 * (1/2) log(r/|x|) integrated over B_r in the plane gives r^2.
  const double r = 0.8;
  const Estimate e = integrate_ball_adaptive(2, r, [r](const Eigen::VectorXd& x) { return 2.0 * std::log(r / x.norm()); });
  EXPECT_NEAR(e.value, r * r, 1e-8);
}

TEST(AdaptiveRule, EndpointSingularity) {
  const Estimate e = integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0);
  EXPECT_NEAR(e.value, 2.0 / 3.0, 1e-12);
  const Estimate l = integrate_adaptive([](double x) { return std::log(x); }, 0.0, 1.0);
  EXPECT_NEAR(l.value, -1.0, 1e-11);
}

TEST(AdaptiveRule, ReportsConvergenceFailure) {
  AdaptiveOptions opt;
  opt.max_intervals = 3;
  opt.abs_tol = 1e-15;
  opt.rel_tol = 1e-15;
  try {
    integrate_adaptive([](double x) { return std::sin(200.0 * x) / std::sqrt(x); }, 0.0, 1.0, opt);
    FAIL() << "expected ConvergenceFailure";
  } catch (const ConvergenceFailure& e) {
    EXPECT_GT(e.error_estimate(), 0.0);
    EXPECT_TRUE(std::isfinite(e.best_estimate()));
  }
}

TEST(RadialRule, UnitMass) {
  for (int level = 1; level <= 4; ++level) {
    const RadialRule rule = radial_rule(level);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      EXPECT_GE(rule.weights[i], 0.0);
      EXPECT_GE(rule.nodes[i], 0.0);
      EXPECT_LT(rule.nodes[i], 1.0);
      s += rule.weights[i];
    }
    EXPECT_NEAR(s, 1.0, 1e-12);
  }
}

TEST(AlignedRule, PoissonKernelHasUnitMassNearBoundary) {
  for (int n : {2, 3, 4}) {
    Eigen::VectorXd dir = Eigen::VectorXd::Ones(n).normalized();
    for (double rad : {0.0, 0.5, 0.99, 0.999}) {
      const Eigen::VectorXd x = rad * dir;
      const SphereRule rule = aligned_sphere_rule(n, dir, rad, 2);
      const double mass = integrate_sphere(rule, [&](const Eigen::VectorXd& z) {
        return (1.0 - x.squaredNorm()) / std::pow((x - z).norm(), n);
      }).value;
      EXPECT_NEAR(mass, 1.0, 1e-9) << "n=" << n << " |x|=" << rad;
    }
  }
}

TEST(AlignedRule, FactoryMatchesOneShotRule) {
  Eigen::VectorXd dir(3);
  dir << 0.0, 0.6, 0.8;
  const AlignedRuleFactory factory(3, 2);
  const SphereRule a = factory.build(dir, 0.9);
  const SphereRule b = aligned_sphere_rule(3, dir, 0.9, 2);
  EXPECT_EQ(a.nodes, b.nodes);
  EXPECT_EQ(a.weights, b.weights);
}
