#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "rieszlab/hardy.hpp"

using namespace rieszlab;

namespace {

Eigen::VectorXd pt(std::initializer_list<double> v) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double a : v) x(i++) = a;
  return x;
}

}  // namespace

TEST(IntegralMeans, IdentityAndMonomialsInThePlane) {
  const MapSpec z3 = disk_analytic({0.0, 0.0, 0.0, 1.0});
  const SphereRule rule = sphere_rule(2, 1);
  for (double r : {0.2, 0.7, 0.99})
    for (double p : {0.5, 1.0, 2.0, 3.5}) EXPECT_NEAR(integral_mean(z3, r, p, rule).value, r * r * r, 1e-12);
}

TEST(IntegralMeans, ParsevalForTwoMeans) {
  const std::vector<cplx> a{0.3, cplx(0.5, -0.2), 0.0, cplx(0.1, 0.4), -0.25};
  const MapSpec f = disk_analytic(a);
  for (double r : {0.3, 0.9, 0.999}) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += std::norm(a[k]) * std::pow(r, 2.0 * k);
    EXPECT_NEAR(integral_mean(f, r, 2.0, sphere_rule(2, 1)).value, std::sqrt(s), 1e-12);
  }
}

TEST(IntegralMeans, CoordinateMomentsOnTheTwoSphere) {
  // zeta_1 is uniform on [-1, 1] under sigma on S^2: E|zeta_1|^p = 1/(p+1).
  const MapSpec id = real_polynomial_map(RealPolynomial::identity(3));
  const SphereRule rule = sphere_rule(3, 2);
  for (double p : {2.0, 4.0}) {
    const Estimate e = integral_mean(id, 0.6, p, rule, Selection::coordinate(0));
    EXPECT_NEAR(e.value, 0.6 * std::pow(1.0 / (p + 1.0), 1.0 / p), 1e-12);
  }
  MeanOptions loose;
  loose.tol = 1e-6;
  EXPECT_NEAR(integral_mean(id, 0.6, 3.0, rule, Selection::coordinate(0), loose).value, 0.6 * std::cbrt(0.25), 1e-6);
  try {
    integral_mean(id, 0.6, 1.0, rule, Selection::coordinate(0), loose);
    FAIL() << "expected ConvergenceFailure";
  } catch (const ConvergenceFailure& e) {
    EXPECT_NEAR(e.best_estimate(), 0.3, 1e-3);
    EXPECT_GT(e.error_estimate(), 1e-6);
  }
  EXPECT_NEAR(integral_mean(id, 0.6, 3.0, rule).value, 0.6, 1e-12);
}

TEST(IntegralMeans, SelectionsOfRealAndImaginaryParts) {
  const MapSpec f = disk_analytic({0.0, 1.0});
  const SphereRule rule = sphere_rule(2, 1);
  EXPECT_NEAR(integral_mean(f, 0.5, 2.0, rule, Selection::real_parts()).value, 0.5 / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(integral_mean(f, 0.5, 2.0, rule, Selection::imag_parts()).value, 0.5 / std::sqrt(2.0), 1e-14);
  EXPECT_THROW(integral_mean(f, 0.5, 2.0, rule, Selection::coordinate(2)), InvalidArgument);
}

TEST(IntegralMeans, SharedExponentsMatchSingleCalls) {
  const MapSpec f = sharpness_example(2.0);
  const SphereRule rule = sphere_rule(2, 1);
  const auto many = integral_means(f, 0.9, {1.0, 1.5, 2.0}, rule);
  EXPECT_EQ(many[1].value, integral_mean(f, 0.9, 1.5, rule).value);
}

TEST(IntegralMeans, MonteCarloWithinStandardError) {
  const MapSpec id = real_polynomial_map(RealPolynomial::identity(4));
  const SphereRule mc = sphere_rule_monte_carlo(4, 4000, 5);
  const Estimate e = integral_mean(id, 0.5, 2.0, mc, Selection::coordinate(0));
  EXPECT_GT(e.err, 0.0);
  EXPECT_NEAR(e.value, 0.25, 5 * e.err);
}

TEST(IntegralMeans, ErrorsAndDiagnostics) {
  const MapSpec f = sharpness_example(2.0);
  const SphereRule rule = sphere_rule(2, 1);
  EXPECT_THROW(integral_mean(f, 1.0, 1.0, rule), InvalidArgument);
  EXPECT_THROW(integral_mean(f, 0.5, 0.0, rule), InvalidArgument);
  EXPECT_THROW(integral_mean(f, 0.5, 1.0, sphere_rule(3, 1)), InvalidArgument);
  MeanOptions tight;
  tight.max_level = 2;
  EXPECT_THROW(integral_mean(f, 0.999, 1.0, rule, {}, tight), ConvergenceFailure);
}

TEST(SharpnessMeans, FirstCoordinateMeanIsConstant) {
  for (double K : {1.0, 3.0}) {
    const MapSpec f = sharpness_example(K);
    for (double r : default_r_grid())
      EXPECT_NEAR(integral_mean(f, r, 1.0, sphere_rule(2, 1), Selection::coordinate(0)).value, 2 * K / (K + 1), 1e-6);
  }
}

TEST(HardyNorm, FlagsGrowthOnlyForUnboundedMeans) {
  const auto grid = default_r_grid();
  const HardyNorm bounded = hardy_norm(disk_analytic({0.0, 1.0}), 2.0, grid, sphere_rule(2, 1));
  EXPECT_FALSE(bounded.diverges);
  EXPECT_NEAR(bounded.sup, 0.999, 1e-12);
  const HardyNorm growing = hardy_norm(sharpness_example(1.0), 1.0, grid, sphere_rule(2, 1));
  EXPECT_TRUE(growing.diverges);
  EXPECT_GT(growing.tail_fit.slope, 0.2);
  EXPECT_THROW(hardy_norm(sharpness_example(1.0), 1.0, {0.5, 0.4}, sphere_rule(2, 1)), InvalidArgument);
}

TEST(LogGrowthFit, ExactLine) {
  std::vector<double> r{0.9, 0.99, 0.999}, v;
  for (double x : r) v.push_back(2.0 - 0.5 * std::log1p(-x));
  const LogFit fit = log_growth_fit(r, v);
  EXPECT_NEAR(fit.slope, 0.5, 1e-12);
  EXPECT_NEAR(fit.intercept, 2.0, 1e-12);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
}

TEST(MeansTable, CsvLayout) {
  const MeansTable t = means_table(disk_analytic({0.0, 1.0}), {0.5, 0.9}, {1.0, 2.0}, sphere_rule(2, 1));
  ASSERT_EQ(t.rows.size(), 4u);
  const std::string csv = t.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "r,p,value,err");
  EXPECT_NE(csv.find("0.90000000000000002,2,"), std::string::npos);
}

TEST(Conjugation, SeriesRoundTripAndInvolution) {
  TrigSeries u;
  u.a0 = 0.4;
  u.a = {1.0, 0.0, -0.3};
  u.b = {0.2, 0.5};
  const TrigSeries v = conjugate_disk(u);
  const TrigSeries w = conjugate_disk(v);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_DOUBLE_EQ(w.a[k], -(k < u.a.size() ? u.a[k] : 0.0));
    EXPECT_DOUBLE_EQ(w.b[k], -(k < u.b.size() ? u.b[k] : 0.0));
  }
  const MapSpec F = disk_analytic(analytic_coefficients(u));
  for (double theta : {0.0, 1.0, 2.5}) {
    const Eigen::VectorXd val = eval(F, pt({0.7 * std::cos(theta), 0.7 * std::sin(theta)}));
    EXPECT_NEAR(val(0), u(0.7, theta), 1e-14);
    EXPECT_NEAR(val(1), v(0.7, theta), 1e-14);
  }
  const TrigSeries back = real_part_series(analytic_coefficients(u));
  EXPECT_DOUBLE_EQ(back.b[1], 0.5);
}

TEST(GreenFunctions, ClosedForms) {
  EXPECT_NEAR(green_G(2, 0.2, 0.8), 0.5 * std::log(4.0), 1e-15);
  EXPECT_NEAR(green_G(3, 0.5, 0.8), (2.0 - 1.25) / 3.0, 1e-15);
  EXPECT_NEAR(green_g_hyperbolic(2, 0.2, 0.8), 0.5 * std::log(4.0), 1e-12);
  // (1/3) int_s^r (t^{-2} - 1) dt
  EXPECT_NEAR(green_g_hyperbolic(3, 0.2, 0.8), ((1 / 0.2 - 1 / 0.8) - 0.6) / 3.0, 1e-12);
  EXPECT_DOUBLE_EQ(green_g_hyperbolic(3, 0.5, 0.5), 0.0);
  EXPECT_THROW(green_G(3, 0.9, 0.5), InvalidArgument);
  EXPECT_THROW(green_g_hyperbolic(3, 0.0, 0.5), InvalidArgument);
}

TEST(GreenIdentity, EuclideanResidualsAreSmall) {
  const GreenIdentity id = hardy_stein_residual(disk_analytic({0.0, 1.0}), 0.7, 2.0);
  EXPECT_NEAR(id.lhs, 0.49, 1e-12);
  EXPECT_LT(id.residual, 1e-8);
  const MapSpec f = disk_analytic({0.2, cplx(0.5, 0.1), cplx(0.0, -0.3)});
  for (double p : {1.5, 3.0}) EXPECT_LT(hardy_stein_residual(f, 0.7, p).residual, 1e-5);
  const MapSpec id3 = real_polynomial_map(RealPolynomial::identity(3));
  EXPECT_LT(hardy_stein_residual(id3, 0.6, 3.0).residual, 1e-5);
  EXPECT_THROW(hardy_stein_residual(f, 0.7, 1.0), InvalidArgument);
}

TEST(GreenIdentity, InvariantResidualForSquaredExtension) {
  const MapSpec u = hyperbolic_poisson_extend(
      boundary_from_polynomial(RealPolynomial(3, {{{1.0, {1, 0, 0}}, {0.5, {0, 1, 1}}, {0.3, {0, 0, 2}}}})));
  const GreenIdentity g = invariant_green_residual(u, 0.5);
  EXPECT_LT(g.residual, 1e-4);
  EXPECT_GT(g.lhs, 0.0);
}

TEST(SquareFunctions, ClosedFormsForTheIdentity) {
  const RadialRule rule = radial_rule(2);
  const Eigen::VectorXd e1 = pt({1.0, 0.0});
  EXPECT_NEAR(littlewood_paley_g(disk_analytic({0.0, 1.0}), e1, rule).value, std::sqrt(0.5), 1e-10);
  const MapSpec id = real_polynomial_map(RealPolynomial::identity(2));
  EXPECT_NEAR(g_tilde(id, e1, rule).value, std::sqrt(2.0 * 11.0 / 12.0), 1e-10);
  EXPECT_NEAR(stoll_G(id, e1, rule).value, std::sqrt(2.0), 1e-10);
  EXPECT_THROW(g_tilde(id, pt({1.0, 1.0}), rule), InvalidArgument);
}

TEST(NontangentialMax, MonotoneInApertureAndBoundedByCap) {
  const MapSpec id = real_polynomial_map(RealPolynomial::identity(3));
  const Eigen::VectorXd zeta = pt({0.0, 0.6, 0.8});
  double last = 0.0;
  for (double alpha : {1.1, 2.0, 4.0, 16.0}) {
    const NontangentialMax m = nontangential_max(id, zeta, alpha, 10);
    EXPECT_GE(m.value, last);
    EXPECT_LE(m.value, 1.0);
    last = m.value;
  }
  EXPECT_NEAR(last, 1.0 - std::ldexp(1.0, -9), 1e-12);
  EXPECT_THROW(nontangential_max(id, zeta, 1.0, 10), InvalidArgument);
}
