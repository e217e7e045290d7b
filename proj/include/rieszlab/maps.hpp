#pragma once

// The mappings under study and their pointwise jets.
//
// Complex variants live on C^n identified with R^{2n} by
// z_j = x_{2j} + i x_{2j+1}; their values are laid out the same way
// (Re f_1, Im f_1, Re f_2, ...). The real Jacobian has rows Re f_k, Im f_k
// and columns x_j, y_j.

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "rieszlab/error.hpp"
#include "rieszlab/polynomial.hpp"
#include "rieszlab/quadrature.hpp"

namespace rieszlab {

/// Boundary function phi: S^{dim-1} -> R^codim.
struct BoundaryData {
  int dim = 2;
  int codim = 1;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> fn;

  Eigen::VectorXd operator()(const Eigen::VectorXd& zeta) const { return fn(zeta); }
};

inline BoundaryData boundary_from_closure(int n, int m, std::function<Eigen::VectorXd(const Eigen::VectorXd&)> fn) {
  if (n < 2 || m < 1) throw InvalidArgument("boundary data: need n >= 2 and m >= 1");
  return {n, m, std::move(fn)};
}

inline BoundaryData boundary_from_polynomial(const RealPolynomial& p) {
  if (p.vars() < 2) throw InvalidArgument("boundary data: polynomial needs at least two variables");
  return {p.vars(), p.components(), [p](const Eigen::VectorXd& z) { return p.value(z); }};
}

/// Spherical-grid samples: nodes (n x N unit vectors) and values (m x N).
/// Evaluation returns the value at the nearest node.
inline BoundaryData boundary_from_grid(Eigen::MatrixXd nodes, Eigen::MatrixXd values) {
  if (nodes.cols() == 0 || nodes.cols() != values.cols())
    throw InvalidArgument("boundary grid: nodes and values must have the same nonzero column count");
  if (nodes.rows() < 2) throw InvalidArgument("boundary grid: nodes must lie in R^n with n >= 2");
  for (Eigen::Index i = 0; i < nodes.cols(); ++i) {
    const double len = nodes.col(i).norm();
    if (!(len > 0.0)) throw InvalidArgument("boundary grid: zero node");
    nodes.col(i) /= len;
  }
  const int n = static_cast<int>(nodes.rows());
  const int m = static_cast<int>(values.rows());
  auto shared_nodes = std::make_shared<const Eigen::MatrixXd>(std::move(nodes));
  auto shared_values = std::make_shared<const Eigen::MatrixXd>(std::move(values));
  return {n, m, [shared_nodes, shared_values](const Eigen::VectorXd& z) {
            Eigen::Index best = 0;
            (shared_nodes->transpose() * z).maxCoeff(&best);
            return Eigen::VectorXd(shared_values->col(best));
          }};
}

struct DiskAnalytic {
  HolomorphicPolynomial f;
};

/// f = h + conj(g) on the unit disk, stored with g(0) = 0.
struct PlanarHarmonic {
  HolomorphicPolynomial h;
  HolomorphicPolynomial g;
};

/// Componentwise Euclidean Poisson extension P[phi], P(x, zeta) = (1-|x|^2)/|x-zeta|^n.
struct HarmonicExtension {
  BoundaryData boundary;
  int level = 2;
  std::shared_ptr<const AlignedRuleFactory> rules;
};

/// Componentwise hyperbolic Poisson extension, P_h(x, zeta) = (1-|x|^2)^{n-1}/|x-zeta|^{2n-2}.
struct InvariantHarmonicExtension {
  BoundaryData boundary;
  int level = 2;
  std::shared_ptr<const AlignedRuleFactory> rules;
};

/// f = h + conj(g) on the unit ball of C^n, stored with g(0) = 0.
struct PluriharmonicPair {
  HolomorphicPolynomial h;
  HolomorphicPolynomial g;
};

/// Planar K-quasiconformal harmonic map whose first coordinate is a multiple
/// of the Poisson kernel at e_1.
struct SharpnessExample {
  double K = 1.0;
};

/// f = h + kappa conj(h) with h(z) = (z_1, z_2 + 1/(1 - z_1)) on the unit ball of C^2.
struct ShearCounterexample {
  double kappa = 0.0;
};

/// Real polynomial map on B^n (test maps such as the identity or |x|^2).
struct RealPolynomialMap {
  RealPolynomial poly;
};

using MapSpec = std::variant<DiskAnalytic, PlanarHarmonic, HarmonicExtension, InvariantHarmonicExtension,
                             PluriharmonicPair, SharpnessExample, ShearCounterexample, RealPolynomialMap>;

enum class JetScheme { analytic, finite_difference };

struct JetData {
  Eigen::VectorXd value;
  Eigen::MatrixXd jacobian_real;
  Eigen::VectorXd laplacians;
  Eigen::MatrixXcd Df;
  Eigen::MatrixXcd Dbar_f;
  JetScheme scheme = JetScheme::analytic;
};

// ---------------------------------------------------------------------------
// Construction

inline MapSpec disk_analytic(const std::vector<cplx>& coeffs) {
  return DiskAnalytic{HolomorphicPolynomial::univariate(coeffs)};
}

inline MapSpec planar_harmonic(const std::vector<cplx>& h, const std::vector<cplx>& g) {
  std::vector<cplx> hh = h.empty() ? std::vector<cplx>{0.0} : h;
  std::vector<cplx> gg = g;
  if (!gg.empty()) {
    hh[0] += std::conj(gg[0]);
    gg[0] = 0.0;
  }
  return PlanarHarmonic{HolomorphicPolynomial::univariate(hh), HolomorphicPolynomial::univariate(gg)};
}

inline MapSpec pluriharmonic_pair(const HolomorphicPolynomial& h, const HolomorphicPolynomial& g) {
  if (h.vars() != g.vars() || h.components() != g.components())
    throw InvalidArgument("pluriharmonic_pair: h and g must have the same shape");
  const Eigen::VectorXcd g0 = g.at_origin();
  return PluriharmonicPair{h.shifted(g0.conjugate()), g.shifted(-g0)};
}

inline MapSpec sharpness_example(double K) {
  if (!(K >= 1.0) || !std::isfinite(K)) throw InvalidArgument("sharpness_example: K must be >= 1");
  return SharpnessExample{K};
}

inline MapSpec shear_counterexample(double kappa) {
  if (!(kappa >= 0.0 && kappa < 1.0)) throw InvalidArgument("shear_counterexample: kappa must lie in [0, 1)");
  return ShearCounterexample{kappa};
}

inline MapSpec real_polynomial_map(const RealPolynomial& p) {
  if (p.vars() < 2) throw InvalidArgument("real_polynomial_map: need at least two variables");
  return RealPolynomialMap{p};
}

inline MapSpec poisson_extend(const BoundaryData& phi, int rule_level = 2) {
  if (!phi.fn) throw InvalidArgument("poisson_extend: empty boundary function");
  return HarmonicExtension{phi, rule_level, std::make_shared<AlignedRuleFactory>(phi.dim, rule_level)};
}

inline MapSpec hyperbolic_poisson_extend(const BoundaryData& phi, int rule_level = 2) {
  if (!phi.fn) throw InvalidArgument("hyperbolic_poisson_extend: empty boundary function");
  return InvariantHarmonicExtension{phi, rule_level, std::make_shared<AlignedRuleFactory>(phi.dim, rule_level)};
}

// ---------------------------------------------------------------------------
// Shape queries

/// Real dimension of the domain ball.
inline int domain_dim(const MapSpec& map) {
  return std::visit(
      [](const auto& m) -> int {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DiskAnalytic> || std::is_same_v<T, PlanarHarmonic> ||
                      std::is_same_v<T, SharpnessExample>) {
          return 2;
        } else if constexpr (std::is_same_v<T, PluriharmonicPair>) {
          return 2 * m.h.vars();
        } else if constexpr (std::is_same_v<T, ShearCounterexample>) {
          return 4;
        } else if constexpr (std::is_same_v<T, RealPolynomialMap>) {
          return m.poly.vars();
        } else {
          return m.boundary.dim;
        }
      },
      map);
}

/// Number of real components of the value.
inline int codomain_dim(const MapSpec& map) {
  return std::visit(
      [](const auto& m) -> int {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DiskAnalytic> || std::is_same_v<T, PlanarHarmonic> ||
                      std::is_same_v<T, SharpnessExample>) {
          return 2;
        } else if constexpr (std::is_same_v<T, PluriharmonicPair>) {
          return 2 * m.h.components();
        } else if constexpr (std::is_same_v<T, ShearCounterexample>) {
          return 4;
        } else if constexpr (std::is_same_v<T, RealPolynomialMap>) {
          return m.poly.components();
        } else {
          return m.boundary.codim;
        }
      },
      map);
}

/// Complex dimension for complex variants, 0 for real ones.
inline int complex_dim(const MapSpec& map) {
  if (std::holds_alternative<HarmonicExtension>(map) || std::holds_alternative<InvariantHarmonicExtension>(map) ||
      std::holds_alternative<RealPolynomialMap>(map))
    return 0;
  return domain_dim(map) / 2;
}

inline bool is_extension(const MapSpec& map) {
  return std::holds_alternative<HarmonicExtension>(map) || std::holds_alternative<InvariantHarmonicExtension>(map);
}

/// Largest |x| at which the map may be evaluated (exclusive bound for non-extensions).
inline double evaluation_cap(const MapSpec& map) { return is_extension(map) ? 0.999 : 1.0; }

inline std::string variant_name(const MapSpec& map) {
  static const char* names[] = {"DiskAnalytic",     "PlanarHarmonic",      "HarmonicExtension",
                                "InvariantHarmonicExtension", "PluriharmonicPair", "SharpnessExample",
                                "ShearCounterexample", "RealPolynomialMap"};
  return names[map.index()];
}

// ---------------------------------------------------------------------------
// Evaluation

namespace detail {

inline Eigen::VectorXcd to_complex(const Eigen::VectorXd& x) {
  Eigen::VectorXcd z(x.size() / 2);
  for (Eigen::Index j = 0; j < z.size(); ++j) z(j) = cplx(x(2 * j), x(2 * j + 1));
  return z;
}

inline Eigen::VectorXd to_real(const Eigen::VectorXcd& z) {
  Eigen::VectorXd x(2 * z.size());
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    x(2 * j) = z(j).real();
    x(2 * j + 1) = z(j).imag();
  }
  return x;
}

inline void check_point(const MapSpec& map, const Eigen::VectorXd& x) {
  if (x.size() != domain_dim(map)) throw InvalidArgument("map evaluation: point has wrong dimension");
  if (!x.allFinite()) throw InvalidArgument("map evaluation: non-finite point");
  const double r = x.norm();
  if (r >= 1.0) throw DomainError("map evaluation: point outside the open unit ball");
  if (is_extension(map) && r > 0.999 * (1.0 + 1e-12))
    throw DomainError("map evaluation: extensions are evaluated only for |x| <= 0.999");
}

// Kernel (1-|x|^2)^a |x-zeta|^{-k}: a = 1, k = n (Euclidean); a = n-1, k = 2n-2 (hyperbolic).
struct KernelPass {
  Eigen::VectorXd value;
  Eigen::MatrixXd jacobian;
  Eigen::VectorXd laplacians;
};

inline KernelPass kernel_pass(const BoundaryData& phi, const AlignedRuleFactory& rules, int a, int k,
                              const Eigen::VectorXd& x, bool derivatives) {
  const int n = static_cast<int>(x.size());
  const int m = phi.codim;
  const double t = x.squaredNorm();
  const double one_t = 1.0 - t;
  const SphereRule rule = rules.build(x, std::sqrt(t));

  const double A = std::pow(one_t, a);
  const Eigen::VectorXd gradA = -2.0 * a * std::pow(one_t, a - 1) * x;
  const double lapA = -2.0 * a * n * std::pow(one_t, a - 1) +
                      (a >= 2 ? 4.0 * a * (a - 1) * std::pow(one_t, a - 2) * t : 0.0);

  KernelPass out;
  out.value = Eigen::VectorXd::Zero(m);
  if (derivatives) {
    out.jacobian = Eigen::MatrixXd::Zero(m, n);
    out.laplacians = Eigen::VectorXd::Zero(m);
  }
  Eigen::VectorXd zeta(n);
  Eigen::VectorXd d(n);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    zeta = rule.nodes.col(static_cast<Eigen::Index>(i));
    const Eigen::VectorXd val = phi(zeta);
    if (val.size() != m || !val.allFinite()) {
      throw EvaluationError("boundary function returned a non-finite or misshapen value",
                            std::vector<double>(zeta.data(), zeta.data() + n));
    }
    d = x - zeta;
    const double s2 = d.squaredNorm();
    const double B = std::pow(s2, -0.5 * k);
    const double w = rule.weights[i];
    out.value += (w * A * B) * val;
    if (derivatives) {
      const double Bd = B / s2;
      const Eigen::VectorXd grad = gradA * B - (A * k * Bd) * d;
      const double lap = lapA * B + 2.0 * (-k * Bd) * gradA.dot(d) + A * k * (k + 2.0 - n) * Bd;
      out.jacobian += w * val * grad.transpose();
      out.laplacians += (w * lap) * val;
    }
  }
  return out;
}

template <class Ext>
KernelPass extension_pass(const Ext& e, bool euclidean, const Eigen::VectorXd& x, bool derivatives) {
  const int n = e.boundary.dim;
  const int a = euclidean ? 1 : n - 1;
  const int k = euclidean ? n : 2 * n - 2;
  return kernel_pass(e.boundary, *e.rules, a, k, x, derivatives);
}

// Real jet of a complex map from its value and the matrices d f/dz (A) and d f/d zbar (Bbar).
inline JetData complex_jet(const Eigen::VectorXd& value, const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& Bbar) {
  JetData jet;
  jet.value = value;
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  jet.jacobian_real.resize(2 * m, 2 * n);
  for (Eigen::Index k = 0; k < m; ++k)
    for (Eigen::Index j = 0; j < n; ++j) {
      const cplx fx = A(k, j) + Bbar(k, j);
      const cplx fy = cplx(0.0, 1.0) * (A(k, j) - Bbar(k, j));
      jet.jacobian_real(2 * k, 2 * j) = fx.real();
      jet.jacobian_real(2 * k + 1, 2 * j) = fx.imag();
      jet.jacobian_real(2 * k, 2 * j + 1) = fy.real();
      jet.jacobian_real(2 * k + 1, 2 * j + 1) = fy.imag();
    }
  jet.laplacians = Eigen::VectorXd::Zero(2 * m);
  jet.Df = A;
  jet.Dbar_f = Bbar;
  return jet;
}

// d f/dz and d f/dzbar recovered from a real Jacobian.
inline void complex_derivatives_from_real(const Eigen::MatrixXd& J, Eigen::MatrixXcd& A, Eigen::MatrixXcd& Bbar) {
  const Eigen::Index m = J.rows() / 2;
  const Eigen::Index n = J.cols() / 2;
  A.resize(m, n);
  Bbar.resize(m, n);
  for (Eigen::Index k = 0; k < m; ++k)
    for (Eigen::Index j = 0; j < n; ++j) {
      const cplx fx(J(2 * k, 2 * j), J(2 * k + 1, 2 * j));
      const cplx fy(J(2 * k, 2 * j + 1), J(2 * k + 1, 2 * j + 1));
      A(k, j) = 0.5 * (fx - cplx(0.0, 1.0) * fy);
      Bbar(k, j) = 0.5 * (fx + cplx(0.0, 1.0) * fy);
    }
}

inline cplx moebius_w(cplx z) { return (1.0 + z) / (1.0 - z); }
inline cplx moebius_dw(cplx z) { return 2.0 / ((1.0 - z) * (1.0 - z)); }

inline Eigen::VectorXcd shear_h(const Eigen::VectorXcd& z) {
  Eigen::VectorXcd h(2);
  h(0) = z(0);
  h(1) = z(1) + 1.0 / (1.0 - z(0));
  return h;
}

inline Eigen::MatrixXcd shear_Dh(const Eigen::VectorXcd& z) {
  Eigen::MatrixXcd d(2, 2);
  const cplx u = 1.0 - z(0);
  d << 1.0, 0.0, 1.0 / (u * u), 1.0;
  return d;
}

}  // namespace detail

/// Value of the map at x (|x| < 1; extensions only up to |x| = 0.999).
inline Eigen::VectorXd eval(const MapSpec& map, const Eigen::VectorXd& x) {
  detail::check_point(map, x);
  return std::visit(
      [&](const auto& m) -> Eigen::VectorXd {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DiskAnalytic>) {
          return detail::to_real(m.f.value(detail::to_complex(x)));
        } else if constexpr (std::is_same_v<T, PlanarHarmonic> || std::is_same_v<T, PluriharmonicPair>) {
          const Eigen::VectorXcd z = detail::to_complex(x);
          const Eigen::VectorXcd f = m.h.value(z) + m.g.value(z).conjugate();
          return detail::to_real(f);
        } else if constexpr (std::is_same_v<T, HarmonicExtension>) {
          return detail::extension_pass(m, true, x, false).value;
        } else if constexpr (std::is_same_v<T, InvariantHarmonicExtension>) {
          return detail::extension_pass(m, false, x, false).value;
        } else if constexpr (std::is_same_v<T, SharpnessExample>) {
          const double K = m.K;
          const double den = (K + 1.0) * ((1.0 - x(0)) * (1.0 - x(0)) + x(1) * x(1));
          Eigen::VectorXd f(2);
          f(0) = 2.0 * K * (1.0 - x(0) * x(0) - x(1) * x(1)) / den;
          f(1) = 4.0 * x(1) / den;
          return f;
        } else if constexpr (std::is_same_v<T, ShearCounterexample>) {
          const Eigen::VectorXcd h = detail::shear_h(detail::to_complex(x));
          const Eigen::VectorXcd f = h + m.kappa * h.conjugate();
          return detail::to_real(f);
        } else {
          return m.poly.value(x);
        }
      },
      map);
}

/// Extension value whose quadrature is accepted only when levels L and L+1
/// agree within tol * max(1, |value|); non-extensions evaluate directly.
inline Eigen::VectorXd eval_checked(const MapSpec& map, const Eigen::VectorXd& x, double tol) {
  if (!is_extension(map)) return eval(map, x);
  detail::check_point(map, x);
  const bool euclid = std::holds_alternative<HarmonicExtension>(map);
  const BoundaryData& phi =
      euclid ? std::get<HarmonicExtension>(map).boundary : std::get<InvariantHarmonicExtension>(map).boundary;
  const int level = euclid ? std::get<HarmonicExtension>(map).level : std::get<InvariantHarmonicExtension>(map).level;
  const Eigen::VectorXd coarse = eval(map, x);
  const AlignedRuleFactory finer(phi.dim, level + 1);
  const int n = phi.dim;
  const Eigen::VectorXd fine =
      detail::kernel_pass(phi, finer, euclid ? 1 : n - 1, euclid ? n : 2 * n - 2, x, false).value;
  const double diff = (fine - coarse).norm();
  if (diff > tol * std::max(1.0, fine.norm()))
    throw ConvergenceFailure("extension quadrature levels disagree", fine.norm(), diff);
  return fine;
}

namespace detail {

inline JetData finite_difference_jet(const MapSpec& map, const Eigen::VectorXd& x) {
  constexpr double grad_step = 1e-5;
  constexpr double lap_step = 1e-3;
  const int d = static_cast<int>(x.size());
  if (x.norm() + lap_step >= evaluation_cap(map))
    throw PrecisionLoss("finite-difference jet: stencil would leave the evaluation domain");

  JetData jet;
  jet.scheme = JetScheme::finite_difference;
  jet.value = eval(map, x);
  const Eigen::Index m = jet.value.size();
  jet.jacobian_real.resize(m, d);
  jet.laplacians = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd lap_h = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd lap_h2 = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd y = x;
  auto shifted = [&](int j, double h) {
    y(j) = x(j) + h;
    Eigen::VectorXd v = eval(map, y);
    y(j) = x(j);
    return v;
  };
  for (int j = 0; j < d; ++j) {
    const Eigen::VectorXd c1 = (shifted(j, grad_step) - shifted(j, -grad_step)) / (2.0 * grad_step);
    const Eigen::VectorXd c2 = (shifted(j, 0.5 * grad_step) - shifted(j, -0.5 * grad_step)) / grad_step;
    jet.jacobian_real.col(j) = (4.0 * c2 - c1) / 3.0;
    lap_h += (shifted(j, lap_step) - 2.0 * jet.value + shifted(j, -lap_step)) / (lap_step * lap_step);
    lap_h2 += (shifted(j, 0.5 * lap_step) - 2.0 * jet.value + shifted(j, -0.5 * lap_step)) /
              (0.25 * lap_step * lap_step);
  }
  jet.laplacians = (4.0 * lap_h2 - lap_h) / 3.0;
  if (complex_dim(map) > 0) complex_derivatives_from_real(jet.jacobian_real, jet.Df, jet.Dbar_f);
  return jet;
}

}  // namespace detail

/// Value, real Jacobian, per-component Laplacians and (for complex variants)
/// the complex derivative matrices Df = df/dz and Dbar_f = df/dzbar.
///
/// The analytic scheme uses closed forms for polynomial and example maps and
/// differentiates the kernel under the integral sign for extensions.
inline JetData jet(const MapSpec& map, const Eigen::VectorXd& x, JetScheme scheme = JetScheme::analytic) {
  detail::check_point(map, x);
  if (scheme == JetScheme::finite_difference) return detail::finite_difference_jet(map, x);
  return std::visit(
      [&](const auto& m) -> JetData {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DiskAnalytic>) {
          const Eigen::VectorXcd z = detail::to_complex(x);
          const Eigen::MatrixXcd A = m.f.derivative(z);
          return detail::complex_jet(detail::to_real(m.f.value(z)), A, Eigen::MatrixXcd::Zero(A.rows(), A.cols()));
        } else if constexpr (std::is_same_v<T, PlanarHarmonic> || std::is_same_v<T, PluriharmonicPair>) {
          const Eigen::VectorXcd z = detail::to_complex(x);
          const Eigen::VectorXcd f = m.h.value(z) + m.g.value(z).conjugate();
          return detail::complex_jet(detail::to_real(f), m.h.derivative(z), m.g.derivative(z).conjugate());
        } else if constexpr (std::is_same_v<T, HarmonicExtension> || std::is_same_v<T, InvariantHarmonicExtension>) {
          auto pass = detail::extension_pass(m, std::is_same_v<T, HarmonicExtension>, x, true);
          JetData out;
          out.value = std::move(pass.value);
          out.jacobian_real = std::move(pass.jacobian);
          out.laplacians = std::move(pass.laplacians);
          return out;
        } else if constexpr (std::is_same_v<T, SharpnessExample>) {
          const cplx z(x(0), x(1));
          const double kappa = (m.K - 1.0) / (m.K + 1.0);
          Eigen::MatrixXcd A(1, 1), Bbar(1, 1);
          A(0, 0) = detail::moebius_dw(z);
          Bbar(0, 0) = kappa * std::conj(A(0, 0));
          return detail::complex_jet(eval(map, x), A, Bbar);
        } else if constexpr (std::is_same_v<T, ShearCounterexample>) {
          const Eigen::MatrixXcd A = detail::shear_Dh(detail::to_complex(x));
          return detail::complex_jet(eval(map, x), A, m.kappa * A.conjugate());
        } else {
          JetData out;
          out.value = m.poly.value(x);
          out.jacobian_real = m.poly.jacobian(x);
          out.laplacians = m.poly.laplacian(x);
          return out;
        }
      },
      map);
}

/// c * f for polynomial and extension variants.
inline MapSpec scaled(const MapSpec& map, double c) {
  return std::visit(
      [&](const auto& m) -> MapSpec {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, DiskAnalytic>) {
          return DiskAnalytic{m.f.scaled(c)};
        } else if constexpr (std::is_same_v<T, PlanarHarmonic>) {
          return PlanarHarmonic{m.h.scaled(c), m.g.scaled(c)};
        } else if constexpr (std::is_same_v<T, PluriharmonicPair>) {
          return PluriharmonicPair{m.h.scaled(c), m.g.scaled(c)};
        } else if constexpr (std::is_same_v<T, RealPolynomialMap>) {
          return RealPolynomialMap{m.poly.scaled(c)};
        } else if constexpr (std::is_same_v<T, HarmonicExtension> || std::is_same_v<T, InvariantHarmonicExtension>) {
          T out = m;
          auto fn = m.boundary.fn;
          out.boundary.fn = [fn, c](const Eigen::VectorXd& z) -> Eigen::VectorXd { return c * fn(z); };
          return out;
        } else {
          throw InvalidArgument("scaled: not supported for the explicit example maps");
        }
      },
      map);
}

}  // namespace rieszlab
