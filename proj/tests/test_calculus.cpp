#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "rieszlab/calculus.hpp"

using namespace rieszlab;

namespace {

Eigen::VectorXd pt(std::initializer_list<double> v) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double a : v) x(i++) = a;
  return x;
}

// Central-difference value, gradient and Laplacian of a scalar function.
template <class F>
JetData scalar_fd_jet(F&& u, const Eigen::VectorXd& x, double h = 1e-3) {
  const int n = static_cast<int>(x.size());
  JetData j;
  j.value = Eigen::VectorXd::Constant(1, u(x));
  j.jacobian_real = Eigen::MatrixXd(1, n);
  double lap = 0.0;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e(i) = h;
    const double up = u(x + e), um = u(x - e);
    j.jacobian_real(0, i) = (up - um) / (2 * h);
    lap += (up - 2 * j.value(0) + um) / (h * h);
  }
  j.laplacians = Eigen::VectorXd::Constant(1, lap);
  return j;
}

}  // namespace

TEST(MatrixNorms, KnownValues) {
  Eigen::MatrixXd a(2, 2);
  a << 3, 0, 0, -5;
  EXPECT_NEAR(op_norm(a), 5.0, 1e-14);
  EXPECT_NEAR(frob_norm(a), std::sqrt(34.0), 1e-14);
  Eigen::MatrixXcd r(2, 2);
  r << cplx(0, 2), 0, 0, cplx(2, 0);
  EXPECT_NEAR(op_norm(r), 2.0, 1e-14);
  Eigen::MatrixXd bad(1, 1);
  bad << std::nan("");
  EXPECT_THROW(op_norm(bad), InvalidArgument);
}

TEST(MatrixNorms, FrobeniusSandwichOnRandomMatrices) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + t % 5;
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = g(rng);
    const double op = op_norm(a), fr = frob_norm(a);
    EXPECT_LE(op, fr * (1 + 1e-14));
    EXPECT_LE(fr, std::sqrt(n) * op * (1 + 1e-14));
  }
}

TEST(LocalDilatation, LinearMaps) {
  EXPECT_NEAR(dilatation_from_jacobian(Eigen::MatrixXd::Identity(3, 3), pt({0, 0, 0})).local_K, 1.0, 1e-14);
  Eigen::MatrixXd a(2, 2);
  a << 2, 0, 0, 1;
  EXPECT_NEAR(dilatation_from_jacobian(a, pt({0, 0})).local_K, 2.0, 1e-14);
  Eigen::MatrixXd flip(2, 2);
  flip << 1, 0, 0, -1;
  const DilatationSample s = dilatation_from_jacobian(flip, pt({0, 0}));
  EXPECT_TRUE(s.singular);
  EXPECT_TRUE(std::isinf(s.local_K));
  EXPECT_THROW(dilatation_from_jacobian(Eigen::MatrixXd::Ones(2, 3), pt({0, 0})), InvalidArgument);
}

TEST(LocalDilatation, PlanarHarmonicClosedForm) {
  // (|h'| + |g'|)^2 / (|h'|^2 - |g'|^2) for f = h + conj(g).
  const std::vector<cplx> h{0.0, 1.0, cplx(0.2, 0.1)}, g{0.0, 0.3, cplx(0.0, 0.1)};
  const MapSpec f = planar_harmonic(h, g);
  for (const auto& x : interior_sample(2, 50, 0.9)) {
    const cplx z(x(0), x(1));
    const double a = std::abs(h[1] + 2.0 * h[2] * z), b = std::abs(g[1] + 2.0 * g[2] * z);
    EXPECT_NEAR(local_dilatation(f, x).local_K, (a + b) * (a + b) / (a * a - b * b), 1e-12);
  }
}

TEST(LocalDilatation, SharpnessExampleIsExactlyK) {
  for (double K : {1.0, 2.0, 5.0}) {
    const MapSpec f = sharpness_example(K);
    for (const auto& x : interior_sample(2, 50, 0.99)) EXPECT_NEAR(local_dilatation(f, x).local_K, K, 1e-10 * K);
    EXPECT_NEAR(empirical_dilatation(f, 200).K_hat, K, 1e-10 * K);
  }
}

TEST(InteriorSample, DeterministicAndInside) {
  const auto a = interior_sample(4, 300, 0.9);
  const auto b = interior_sample(4, 300, 0.9);
  ASSERT_EQ(a.size(), 300u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_LE(a[i].norm(), 0.9);
    EXPECT_EQ(a[i], b[i]);
  }
  EXPECT_THROW(interior_sample(2, 10, 1.0), InvalidArgument);
}

TEST(SecondDilatation, PlanarIsRatioOfDerivatives) {
  const std::vector<cplx> h{0.0, 1.0, cplx(0.2, 0.1)}, g{0.0, 0.3, cplx(0.0, 0.1)};
  const MapSpec f = planar_harmonic(h, g);
  const cplx z(0.3, -0.2);
  const cplx want = (g[1] + 2.0 * g[2] * z) / (h[1] + 2.0 * h[2] * z);
  EXPECT_NEAR(std::abs(second_dilatation(f, pt({0.3, -0.2})).omega(0, 0) - want), 0.0, 1e-14);
}

TEST(SecondDilatation, ShearIsScalarMatrix) {
  const MapSpec f = shear_counterexample(0.5);
  for (const auto& x : interior_sample(4, 50, 0.95)) {
    const SecondDilatation s = second_dilatation(f, x);
    EXPECT_LT((s.omega - 0.5 * Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(SecondDilatation, SingularAndRealMapsRejected) {
  EXPECT_THROW(second_dilatation(disk_analytic({0.0, 0.0, 1.0}), pt({0, 0})), SingularDerivative);
  EXPECT_THROW(second_dilatation(real_polynomial_map(RealPolynomial::identity(3)), pt({0, 0, 0})), InvalidArgument);
}

TEST(HeinzRatio, QuadraticAndHarmonicMaps) {
  const MapSpec id = real_polynomial_map(RealPolynomial::identity(2));
  const HeinzRatio h0 = heinz_ratio(id, pt({0.3, 0.4}));
  EXPECT_NEAR(h0.ratio, 0.0, 1e-15);
  EXPECT_TRUE(h0.sign_ok);
  // u = x^2 + y^2: u Lap u / |grad u|^2 = 4 u / (4 u) = 1.
  const MapSpec sq = real_polynomial_map(RealPolynomial(2, {{{1.0, {2, 0}}, {1.0, {0, 2}}}}));
  EXPECT_NEAR(heinz_ratio(sq, pt({0.3, 0.4})).ratio, 1.0, 1e-14);
  const MapSpec c = real_polynomial_map(RealPolynomial(2, {{{1.0, {0, 0}}}}));
  EXPECT_TRUE(heinz_ratio(c, pt({0.1, 0.1})).indeterminate);
  const MapSpec neg = real_polynomial_map(RealPolynomial(2, {{{-1.0, {2, 0}}, {0.5, {0, 0}}}}));
  EXPECT_FALSE(heinz_ratio(neg, pt({0.1, 0.1})).sign_ok);
}

TEST(InvariantLaplacian, AnnihilatesHyperbolicPoissonKernel) {
  for (int n : {3, 4}) {
    Eigen::VectorXd zeta = Eigen::VectorXd::Zero(n);
    zeta(0) = 1.0;
    auto ph = [&](const Eigen::VectorXd& x) {
      return std::pow((1.0 - x.squaredNorm()) / (x - zeta).squaredNorm(), n - 1);
    };
    auto pe = [&](const Eigen::VectorXd& x) {
      return (1.0 - x.squaredNorm()) / std::pow((x - zeta).norm(), n);
    };
    for (const auto& x : interior_sample(n, 10, 0.5)) {
      const JetData jh = scalar_fd_jet(ph, x);
      EXPECT_LT(std::abs(invariant_laplacian(jh, x)(0)), 1e-4 * std::max(1.0, jh.jacobian_real.norm()));
    }
    const Eigen::VectorXd x0 = Eigen::VectorXd::Constant(n, 0.2);
    EXPECT_GT(std::abs(invariant_laplacian(scalar_fd_jet(pe, x0), x0)(0)), 1e-2);
  }
}

TEST(InvariantLaplacian, RadialQuadratic) {
  // u = |x|^2 in R^3: Lap u = 6, <grad u, x> = 2|x|^2.
  const MapSpec u = real_polynomial_map(RealPolynomial(3, {{{1.0, {2, 0, 0}}, {1.0, {0, 2, 0}}, {1.0, {0, 0, 2}}}}));
  const Eigen::VectorXd x = pt({0.1, 0.2, 0.3});
  const double w = 1.0 - x.squaredNorm();
  EXPECT_NEAR(invariant_laplacian(u, x)(0), w * w * 6.0 + 2.0 * w * 2.0 * x.squaredNorm(), 1e-14);
  EXPECT_LT((invariant_gradient(u, x) - w * 2.0 * x.transpose()).norm(), 1e-14);
}

TEST(WuRatio, KnownMatrices) {
  EXPECT_NEAR(wu_ratio(Eigen::MatrixXcd::Identity(3, 3)).ratio, 1.0, 1e-14);
  Eigen::MatrixXcd d(2, 2);
  d << 1, 0, 0, cplx(0, 4);
  EXPECT_NEAR(wu_ratio(d).ratio, 2.0, 1e-14);
  EXPECT_TRUE(wu_ratio(Eigen::MatrixXcd::Zero(2, 2)).degenerate);
  EXPECT_THROW(wu_ratio(Eigen::MatrixXcd::Zero(2, 3)), InvalidArgument);
}

TEST(WuRatio, ShearBlowsUpNearBoundary) {
  // Dh = [[1, 0], [1/(1-z1)^2, 1]]: ratio ~ 1/(1-z1)^2.
  const WuRatio w = wu_ratio(shear_counterexample(0.5), pt({0.99, 0.0, 0.0, 0.0}));
  EXPECT_GE(w.ratio, 9.9e3);
  EXPECT_NEAR(std::abs(jet(shear_counterexample(0.5), pt({0.99, 0, 0, 0})).Df.determinant()), 1.0, 1e-9);
}
