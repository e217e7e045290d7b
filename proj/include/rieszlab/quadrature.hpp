#pragma once

// Quadrature for the normalized surface measure on S^{n-1}, the normalized
// volume measure on B^n_r, and one-dimensional radial integrals.
//
// Normalizations used throughout the library:
//   * sigma(S^{n-1}) = 1
//   * dV_N = Lebesgue volume / Vol(B^n), so that V_N(B^n_r) = r^n and
//     int_{B_r} f dV_N = int_0^r n rho^{n-1} int_S f(rho zeta) dsigma drho.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "rieszlab/error.hpp"

namespace rieszlab {

/// A numerical value together with an estimate of its absolute error.
struct Estimate {
  double value = 0.0;
  double err = 0.0;
};

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Jacobi rule on [-1, 1] for the weight (1-x)^alpha (1+x)^beta,
/// computed by the Golub-Welsch eigenvalue method.
inline Rule1D gauss_jacobi(int m, double alpha, double beta) {
  if (m < 1) throw InvalidArgument("gauss_jacobi: need at least one node");
  if (alpha <= -1.0 || beta <= -1.0) throw InvalidArgument("gauss_jacobi: alpha, beta must exceed -1");

  const double ab = alpha + beta;
  Eigen::VectorXd diag(m);
  Eigen::VectorXd sub(std::max(m - 1, 1));
  diag(0) = (beta - alpha) / (ab + 2.0);
  for (int k = 1; k < m; ++k) {
    const double s = 2.0 * k + ab;
    diag(k) = (beta * beta - alpha * alpha) / (s * (s + 2.0));
    const double num = 4.0 * k * (k + alpha) * (k + beta) * (k + ab);
    const double den = s * s * (s + 1.0) * (s - 1.0);
    sub(k - 1) = std::sqrt(num / den);
  }

  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                              std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));
  Rule1D rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  if (m == 1) {
    rule.nodes[0] = diag(0);
    rule.weights[0] = mu0;
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub.head(m - 1), Eigen::ComputeEigenvectors);
  for (int i = 0; i < m; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

/// Gauss-Legendre rule with m nodes mapped to [a, b].
inline Rule1D gauss_legendre(int m, double a = -1.0, double b = 1.0) {
  Rule1D rule = gauss_jacobi(m, 0.0, 0.0);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  for (int i = 0; i < m; ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  return rule;
}

enum class SphereMethod { product, monte_carlo };

/// Nodes (columns) and weights for the normalized measure on S^{dim-1}.
struct SphereRule {
  int dim = 0;
  int level = 0;
  SphereMethod method = SphereMethod::product;
  Eigen::MatrixXd nodes;
  std::vector<double> weights;

  std::size_t size() const noexcept { return weights.size(); }
};

namespace detail {

inline void normalize_weights(std::vector<double>& w) {
  double total = 0.0;
  for (double x : w) total += x;
  for (double& x : w) x /= total;
}

inline SphereRule circle_rule(int count, int level) {
  SphereRule rule;
  rule.dim = 2;
  rule.level = level;
  rule.nodes.resize(2, count);
  rule.weights.assign(count, 1.0 / count);
  for (int k = 0; k < count; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / count;
    rule.nodes(0, k) = std::cos(theta);
    rule.nodes(1, k) = std::sin(theta);
  }
  return rule;
}

}  // namespace detail

/// Product rule on S^{n-1}.
///
/// n = 2: 2^(level+2) equally spaced angles (level 1 gives 8 nodes).
/// n >= 3: zeta = (t, sqrt(1-t^2) eta) with t on a Gauss-Jacobi rule for the
/// weight (1-t^2)^{(n-3)/2} (2^(level+1) nodes; Gauss-Legendre when n = 3)
/// and eta drawn recursively from the rule on S^{n-2} at the same level.
inline SphereRule sphere_rule(int n, int level) {
  if (n < 2) throw InvalidArgument("sphere_rule: dimension must be at least 2");
  if (level < 1) throw InvalidArgument("sphere_rule: level must be at least 1");
  if (level > 22) throw InvalidArgument("sphere_rule: level too large");
  if (n == 2) return detail::circle_rule(1 << (level + 2), level);

  const double a = 0.5 * (n - 3);
  const Rule1D polar = gauss_jacobi(1 << (level + 1), a, a);
  const SphereRule eta = sphere_rule(n - 1, level);

  SphereRule rule;
  rule.dim = n;
  rule.level = level;
  const std::size_t count = polar.nodes.size() * eta.size();
  rule.nodes.resize(n, static_cast<Eigen::Index>(count));
  rule.weights.resize(count);
  std::size_t k = 0;
  for (std::size_t i = 0; i < polar.nodes.size(); ++i) {
    const double t = polar.nodes[i];
    const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
    for (std::size_t j = 0; j < eta.size(); ++j, ++k) {
      rule.nodes(0, k) = t;
      rule.nodes.col(k).tail(n - 1) = s * eta.nodes.col(j);
      rule.weights[k] = polar.weights[i] * eta.weights[j];
    }
  }
  detail::normalize_weights(rule.weights);
  return rule;
}

/// Seeded Monte Carlo rule: normalized standard Gaussian vectors, equal weights.
inline SphereRule sphere_rule_monte_carlo(int n, std::size_t count = std::size_t{1} << 16,
                                          std::uint64_t seed = 0x5EED) {
  if (n < 2) throw InvalidArgument("sphere_rule_monte_carlo: dimension must be at least 2");
  if (count < 2) throw InvalidArgument("sphere_rule_monte_carlo: need at least two samples");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  SphereRule rule;
  rule.dim = n;
  rule.level = 0;
  rule.method = SphereMethod::monte_carlo;
  rule.nodes.resize(n, static_cast<Eigen::Index>(count));
  rule.weights.assign(count, 1.0 / static_cast<double>(count));
  for (std::size_t k = 0; k < count; ++k) {
    Eigen::VectorXd g(n);
    do {
      for (int i = 0; i < n; ++i) g(i) = normal(rng);
    } while (g.norm() < 1e-12);
    rule.nodes.col(static_cast<Eigen::Index>(k)) = g / g.norm();
  }
  return rule;
}

/// Sum of w_i phi(zeta_i). For Monte Carlo rules err is the standard error;
/// for product rules err is zero (use level refinement to estimate it).
template <class F>
Estimate integrate_sphere(const SphereRule& rule, F&& phi) {
  Eigen::VectorXd x(rule.dim);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    x = rule.nodes.col(static_cast<Eigen::Index>(i));
    const double v = phi(x);
    if (!std::isfinite(v)) {
      throw EvaluationError("integrate_sphere: non-finite integrand value",
                            std::vector<double>(x.data(), x.data() + x.size()));
    }
    sum += rule.weights[i] * v;
    sum_sq += rule.weights[i] * v * v;
  }
  Estimate est{sum, 0.0};
  if (rule.method == SphereMethod::monte_carlo) {
    const double count = static_cast<double>(rule.size());
    const double var = std::max(0.0, sum_sq - sum * sum) * count / (count - 1.0);
    est.err = std::sqrt(var / count);
  }
  return est;
}

/// Rule for the normalized volume measure on B^n_r.
///
/// Radial nodes come from Gauss-Legendre in u with rho = r u^3; the cubic
/// substitution flattens the logarithmic and power singularities of the
/// Green kernels at the origin. The radial weights carry n rho^{n-1} so that
/// the rule integrates 1 to r^n.
struct BallRule {
  int dim = 0;
  double radius = 1.0;
  std::vector<double> radial_nodes;
  std::vector<double> radial_weights;
  SphereRule sphere;
};

inline BallRule ball_rule(int n, double r, int radial_level, int sphere_level) {
  if (!(r > 0.0 && r <= 1.0)) throw InvalidArgument("ball_rule: radius must lie in (0, 1]");
  if (radial_level < 1) throw InvalidArgument("ball_rule: radial level must be at least 1");
  BallRule rule;
  rule.dim = n;
  rule.radius = r;
  rule.sphere = sphere_rule(n, sphere_level);
  const Rule1D u = gauss_legendre(4 << radial_level, 0.0, 1.0);
  const double rn = std::pow(r, n);
  for (std::size_t i = 0; i < u.nodes.size(); ++i) {
    const double t = u.nodes[i];
    rule.radial_nodes.push_back(r * t * t * t);
    rule.radial_weights.push_back(3.0 * n * rn * std::pow(t, 3 * n - 1) * u.weights[i]);
  }
  return rule;
}

template <class F>
Estimate integrate_ball(const BallRule& rule, F&& f) {
  Eigen::VectorXd x(rule.dim);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.radial_nodes.size(); ++i) {
    const double rho = rule.radial_nodes[i];
    double shell = 0.0;
    for (std::size_t j = 0; j < rule.sphere.size(); ++j) {
      x = rho * rule.sphere.nodes.col(static_cast<Eigen::Index>(j));
      const double v = f(x);
      if (!std::isfinite(v)) {
        throw EvaluationError("integrate_ball: non-finite integrand value",
                              std::vector<double>(x.data(), x.data() + x.size()));
      }
      shell += rule.sphere.weights[j] * v;
    }
    sum += rule.radial_weights[i] * shell;
  }
  return {sum, 0.0};
}

/// Gauss-Legendre rule on [0, 1] for radial square-function integrals.
struct RadialRule {
  int level = 1;
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline RadialRule radial_rule(int level) {
  if (level < 1) throw InvalidArgument("radial_rule: level must be at least 1");
  const Rule1D gl = gauss_legendre(8 << level, 0.0, 1.0);
  return {level, gl.nodes, gl.weights};
}

struct AdaptiveOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_intervals = 4000;
};

namespace detail {

inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss7_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, err;
  bool operator<(const Segment& o) const { return err < o.err; }
};

template <class F>
Segment kronrod_segment(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double k15 = kronrod_weights[7] * fc;
  double g7 = gauss7_weights[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kronrod_nodes[j];
    const double pair = f(c - dx) + f(c + dx);
    k15 += kronrod_weights[j] * pair;
    if (j % 2 == 1) g7 += gauss7_weights[j / 2] * pair;
  }
  k15 *= h;
  g7 *= h;
  if (!std::isfinite(k15)) {
    throw EvaluationError("integrate_adaptive: non-finite integrand value", {a, b});
  }
  return {a, b, k15, std::abs(k15 - g7)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) integration on [a, b].
/// Throws ConvergenceFailure when the tolerance is not met within
/// max_intervals subdivisions.
template <class F>
Estimate integrate_adaptive(F&& f, double a, double b, const AdaptiveOptions& opt = {}) {
  if (a == b) return {0.0, 0.0};
  std::priority_queue<detail::Segment> heap;
  auto first = detail::kronrod_segment(f, a, b);
  double total = first.value;
  double total_err = first.err;
  heap.push(first);
  int intervals = 1;
  while (total_err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
    if (intervals >= opt.max_intervals) {
      throw ConvergenceFailure("integrate_adaptive: tolerance not reached", total, total_err);
    }
    const detail::Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const auto left = detail::kronrod_segment(f, worst.a, mid);
    const auto right = detail::kronrod_segment(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // Re-sum to shed the drift of the running updates.
  double sum = 0.0;
  double err = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    err += heap.top().err;
    heap.pop();
  }
  return {sum, err};
}

/// Evaluates eval(level) for increasing levels until two consecutive values
/// agree within tol * max(1, |value|); returns the finer value with the
/// difference as its error estimate.
template <class Eval>
Estimate refine_levels(Eval&& eval, int start_level, int max_level, double tol) {
  double prev = eval(start_level);
  double diff = 0.0;
  for (int level = start_level + 1; level <= max_level; ++level) {
    const double cur = eval(level);
    diff = std::abs(cur - prev);
    if (diff <= tol * std::max(1.0, std::abs(cur))) return {cur, diff};
    prev = cur;
  }
  throw ConvergenceFailure("refine_levels: consecutive levels disagree beyond tolerance", prev, diff);
}

/// Integral over B^n_r against dV_N by nested quadrature: adaptive
/// Gauss-Kronrod in the radius, and on each sphere either adaptive
/// Gauss-Kronrod in the angle (n = 2) or a product rule (n >= 3).
template <class F>
Estimate integrate_ball_adaptive(int n, double r, F&& f, const AdaptiveOptions& opt = {},
                                 int sphere_level = 4) {
  if (!(r > 0.0 && r <= 1.0)) throw InvalidArgument("integrate_ball_adaptive: radius must lie in (0, 1]");
  AdaptiveOptions inner_opt = opt;
  inner_opt.abs_tol = 0.1 * opt.abs_tol;
  Eigen::VectorXd x(n);
  double inner_err = 0.0;
  SphereRule rule;
  if (n >= 3) rule = sphere_rule(n, sphere_level);

  auto shell_mean = [&](double rho) {
    if (n == 2) {
      auto on_circle = [&](double theta) {
        x(0) = rho * std::cos(theta);
        x(1) = rho * std::sin(theta);
        return f(x);
      };
      const Estimate e = integrate_adaptive(on_circle, 0.0, 2.0 * std::numbers::pi, inner_opt);
      inner_err = std::max(inner_err, e.err);
      return e.value / (2.0 * std::numbers::pi);
    }
    double s = 0.0;
    for (std::size_t j = 0; j < rule.size(); ++j) {
      x = rho * rule.nodes.col(static_cast<Eigen::Index>(j));
      s += rule.weights[j] * f(x);
    }
    return s;
  };
  auto radial = [&](double rho) { return n * std::pow(rho, n - 1) * shell_mean(rho); };
  Estimate outer = integrate_adaptive(radial, 0.0, r, opt);
  outer.err += inner_err * std::pow(r, n);
  return outer;
}

/// Sphere rules whose polar angle is graded toward a direction, for
/// integrating kernels that concentrate there (Poisson kernels at radius
/// close to 1). Polar panels are geometric in (1 - radius); each panel carries
/// a Gauss-Legendre rule of order 8 + 4*level, and the transverse directions
/// use sphere_rule(n-1, level) (two antipodal points when n = 2). The
/// transverse rule and the panel rule are built once per factory.
class AlignedRuleFactory {
 public:
  AlignedRuleFactory(int n, int level) : n_(n), level_(level) {
    if (n < 2) throw InvalidArgument("aligned rule: dimension must be at least 2");
    if (level < 1) throw InvalidArgument("aligned rule: level must be at least 1");
    panel_ = gauss_legendre(8 + 4 * level);
    if (n == 2) {
      eta_nodes_.resize(1, 2);
      eta_nodes_ << 1.0, -1.0;
      eta_weights_ = {0.5, 0.5};
    } else {
      SphereRule eta = sphere_rule(n - 1, level);
      eta_nodes_ = std::move(eta.nodes);
      eta_weights_ = std::move(eta.weights);
    }
  }

  int dim() const noexcept { return n_; }
  int level() const noexcept { return level_; }

  SphereRule build(const Eigen::VectorXd& direction, double radius) const {
    const double pi = std::numbers::pi;
    const int n = n_;
    Eigen::VectorXd axis = Eigen::VectorXd::Zero(n);
    if (direction.norm() > 0.0) {
      axis = direction / direction.norm();
    } else {
      axis(0) = 1.0;
    }

    const double delta = std::max(1.0 - radius, 1e-9);
    std::vector<double> edges{0.0};
    for (double e = 0.25 * delta; e < pi; e *= 2.0) edges.push_back(e);
    if (edges.back() < pi) edges.push_back(pi);

    const std::size_t order = panel_.nodes.size();
    std::vector<double> theta;
    std::vector<double> theta_w;
    theta.reserve(order * edges.size());
    theta_w.reserve(order * edges.size());
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
      const double a = edges[p];
      const double b = edges[p + 1];
      for (std::size_t i = 0; i < order; ++i) {
        const double t = 0.5 * (a + b) + 0.5 * (b - a) * panel_.nodes[i];
        theta.push_back(t);
        theta_w.push_back(0.5 * (b - a) * panel_.weights[i] * std::pow(std::sin(t), n - 2));
      }
    }

    // Orthonormal basis whose first column is +-axis.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(axis);
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd transverse = q.rightCols(n - 1) * eta_nodes_;

    SphereRule rule;
    rule.dim = n;
    rule.level = level_;
    const std::size_t count = theta.size() * eta_weights_.size();
    rule.nodes.resize(n, static_cast<Eigen::Index>(count));
    rule.weights.resize(count);
    std::size_t k = 0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      const double c = std::cos(theta[i]);
      const double s = std::sin(theta[i]);
      for (std::size_t j = 0; j < eta_weights_.size(); ++j, ++k) {
        rule.nodes.col(static_cast<Eigen::Index>(k)) =
            c * axis + s * transverse.col(static_cast<Eigen::Index>(j));
        rule.weights[k] = theta_w[i] * eta_weights_[j];
      }
    }
    detail::normalize_weights(rule.weights);
    return rule;
  }

 private:
  int n_;
  int level_;
  Rule1D panel_;
  Eigen::MatrixXd eta_nodes_;
  std::vector<double> eta_weights_;
};

inline SphereRule aligned_sphere_rule(int n, const Eigen::VectorXd& direction, double radius, int level) {
  return AlignedRuleFactory(n, level).build(direction, radius);
}

}  // namespace rieszlab
