#pragma once

// Pointwise functionals of a map's jet: matrix norms, dilatations, the
// Heinz ratio, the invariant Laplacian and gradient, and the Wu ratio.

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "rieszlab/error.hpp"
#include "rieszlab/maps.hpp"

namespace rieszlab {

namespace detail {

template <class Mat>
void require_finite(const Mat& a, const char* who) {
  if (!a.allFinite()) throw InvalidArgument(std::string(who) + ": matrix has non-finite entries");
}

}  // namespace detail

/// Largest singular value.
inline double op_norm(const Eigen::MatrixXd& a) {
  detail::require_finite(a, "op_norm");
  if (a.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Eigen::MatrixXd>(a).singularValues()(0);
}

inline double op_norm(const Eigen::MatrixXcd& a) {
  detail::require_finite(a, "op_norm");
  if (a.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(a).singularValues()(0);
}

inline double frob_norm(const Eigen::MatrixXd& a) {
  detail::require_finite(a, "frob_norm");
  return a.norm();
}

inline double frob_norm(const Eigen::MatrixXcd& a) {
  detail::require_finite(a, "frob_norm");
  return a.norm();
}

struct DilatationSample {
  Eigen::VectorXd point;
  double local_K = 1.0;
  double jacobian_det = 0.0;
  double op_norm = 0.0;
  bool singular = false;
};

/// ||J||^d / det J for the real Jacobian J (d x d). Reported as +infinity with
/// the singular flag when det J <= 1e-14 ||J||^d.
inline DilatationSample dilatation_from_jacobian(const Eigen::MatrixXd& J, const Eigen::VectorXd& x) {
  if (J.rows() != J.cols()) throw InvalidArgument("local_dilatation: Jacobian must be square");
  DilatationSample s;
  s.point = x;
  s.op_norm = op_norm(J);
  s.jacobian_det = J.determinant();
  const double top = std::pow(s.op_norm, static_cast<double>(J.rows()));
  if (!(s.jacobian_det > 1e-14 * top)) {
    s.local_K = std::numeric_limits<double>::infinity();
    s.singular = true;
  } else {
    s.local_K = top / s.jacobian_det;
  }
  return s;
}

inline DilatationSample local_dilatation(const MapSpec& map, const Eigen::VectorXd& x,
                                         JetScheme scheme = JetScheme::analytic) {
  return dilatation_from_jacobian(jet(map, x, scheme).jacobian_real, x);
}

/// Quasi-random points of the ball of radius `radius` in R^dim: a Halton
/// sequence on the cube [-radius, radius]^dim with rejection. Deterministic.
inline std::vector<Eigen::VectorXd> interior_sample(int dim, int count, double radius) {
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
  if (dim < 1 || dim > 16) throw InvalidArgument("interior_sample: dimension must lie in [1, 16]");
  if (!(radius > 0.0 && radius < 1.0)) throw InvalidArgument("interior_sample: radius must lie in (0, 1)");
  std::vector<Eigen::VectorXd> out;
  out.reserve(static_cast<std::size_t>(count));
  Eigen::VectorXd x(dim);
  for (long index = 1; static_cast<int>(out.size()) < count; ++index) {
    for (int j = 0; j < dim; ++j) {
      double f = 1.0;
      double v = 0.0;
      for (long i = index; i > 0; i /= primes[j]) {
        f /= primes[j];
        v += f * static_cast<double>(i % primes[j]);
      }
      x(j) = radius * (2.0 * v - 1.0);
    }
    if (x.norm() <= radius) out.push_back(x);
  }
  return out;
}

/// Sampled maximum of the local dilatation, with the sample that produced it.
struct EmpiricalDilatation {
  double K_hat = 1.0;
  Eigen::VectorXd argmax;
  int sample_count = 0;
  double sample_radius = 0.95;
  int singular_points = 0;
};

inline EmpiricalDilatation empirical_dilatation(const MapSpec& map, int count = 500, double radius = 0.95) {
  EmpiricalDilatation e;
  e.sample_count = count;
  e.sample_radius = radius;
  e.K_hat = 0.0;
  for (const auto& x : interior_sample(domain_dim(map), count, radius)) {
    const DilatationSample s = local_dilatation(map, x);
    if (s.singular) ++e.singular_points;
    if (s.local_K > e.K_hat || e.argmax.size() == 0) {
      e.K_hat = std::max(e.K_hat, s.local_K);
      e.argmax = x;
    }
  }
  return e;
}

struct SecondDilatation {
  Eigen::MatrixXcd omega;
  double norm = 0.0;
};

/// omega = conj(Dbar_f) Df^{-1}, the solution of conj(Dbar_f) = omega Df.
inline SecondDilatation second_dilatation(const MapSpec& map, const Eigen::VectorXd& x) {
  if (complex_dim(map) == 0) throw InvalidArgument("second_dilatation: map has no complex structure");
  const JetData j = jet(map, x);
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(j.Df);
  const double scale = op_norm(j.Df);
  if (!lu.isInvertible() || !(std::abs(lu.determinant()) > 1e-14 * std::pow(scale, j.Df.rows())))
    throw SingularDerivative("second_dilatation: Df is singular");
  SecondDilatation s;
  s.omega = j.Dbar_f.conjugate() * lu.inverse();
  s.norm = op_norm(s.omega);
  return s;
}

struct HeinzRatio {
  double ratio = 0.0;
  bool sign_ok = true;
  bool indeterminate = false;
  double product_sum = 0.0;   // sum_j f_j Lap f_j
  double gradient_sum = 0.0;  // sum_j |grad f_j|^2
};

inline HeinzRatio heinz_ratio(const JetData& j) {
  HeinzRatio h;
  h.product_sum = j.value.dot(j.laplacians);
  h.gradient_sum = j.jacobian_real.squaredNorm();
  h.sign_ok = h.product_sum >= -1e-9;
  if (!(h.gradient_sum > 0.0)) {
    h.indeterminate = true;
    h.ratio = std::numeric_limits<double>::quiet_NaN();
  } else {
    h.ratio = h.product_sum / h.gradient_sum;
  }
  return h;
}

inline HeinzRatio heinz_ratio(const MapSpec& map, const Eigen::VectorXd& x,
                              JetScheme scheme = JetScheme::analytic) {
  return heinz_ratio(jet(map, x, scheme));
}

/// (1-|x|^2)^2 Lap f + 2(n-2)(1-|x|^2) <grad f, x>, per component.
inline Eigen::VectorXd invariant_laplacian(const JetData& j, const Eigen::VectorXd& x) {
  const double n = static_cast<double>(x.size());
  const double w = 1.0 - x.squaredNorm();
  return w * w * j.laplacians + 2.0 * (n - 2.0) * w * (j.jacobian_real * x);
}

inline Eigen::VectorXd invariant_laplacian(const MapSpec& map, const Eigen::VectorXd& x,
                                           JetScheme scheme = JetScheme::analytic) {
  return invariant_laplacian(jet(map, x, scheme), x);
}

/// (1-|x|^2) grad f_j as the rows of the returned matrix.
inline Eigen::MatrixXd invariant_gradient(const MapSpec& map, const Eigen::VectorXd& x,
                                          JetScheme scheme = JetScheme::analytic) {
  return (1.0 - x.squaredNorm()) * jet(map, x, scheme).jacobian_real;
}

struct WuRatio {
  double ratio = 1.0;
  bool degenerate = false;
};

/// ||Df|| / |det Df|^{1/n} for the complex n x n derivative.
inline WuRatio wu_ratio(const Eigen::MatrixXcd& Df) {
  if (Df.rows() != Df.cols() || Df.rows() == 0) throw InvalidArgument("wu_ratio: Df must be square");
  WuRatio w;
  const double det = std::abs(Df.determinant());
  const double op = op_norm(Df);
  if (!(det > 0.0)) {
    w.ratio = std::numeric_limits<double>::infinity();
    w.degenerate = true;
    return w;
  }
  w.ratio = op / std::pow(det, 1.0 / static_cast<double>(Df.rows()));
  return w;
}

inline WuRatio wu_ratio(const MapSpec& map, const Eigen::VectorXd& x) {
  if (complex_dim(map) == 0) throw InvalidArgument("wu_ratio: map has no complex structure");
  return wu_ratio(jet(map, x).Df);
}

}  // namespace rieszlab
