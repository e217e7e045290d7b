#pragma once

// Integral means and Hardy norms, planar conjugation, Green identities
// (Euclidean and invariant), radial square functions and non-tangential
// maximal functions.

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rieszlab/calculus.hpp"
#include "rieszlab/error.hpp"
#include "rieszlab/maps.hpp"
#include "rieszlab/quadrature.hpp"

namespace rieszlab {

/// Which part of the value vector enters |f|.
struct Selection {
  enum class Kind { all, coordinate, real_parts, imag_parts };
  Kind kind = Kind::all;
  int index = 0;

  static Selection whole() { return {}; }
  static Selection coordinate(int k) { return {Kind::coordinate, k}; }
  static Selection real_parts() { return {Kind::real_parts, 0}; }
  static Selection imag_parts() { return {Kind::imag_parts, 0}; }

  double squared(const Eigen::VectorXd& v) const {
    switch (kind) {
      case Kind::coordinate:
        if (index < 0 || index >= v.size()) throw InvalidArgument("selection: coordinate index out of range");
        return v(index) * v(index);
      case Kind::real_parts:
      case Kind::imag_parts: {
        double s = 0.0;
        for (Eigen::Index k = (kind == Kind::real_parts ? 0 : 1); k < v.size(); k += 2) s += v(k) * v(k);
        return s;
      }
      default:
        return v.squaredNorm();
    }
  }

  std::string label() const {
    switch (kind) {
      case Kind::coordinate:
        return "f" + std::to_string(index + 1);
      case Kind::real_parts:
        return "re";
      case Kind::imag_parts:
        return "im";
      default:
        return "f";
    }
  }
};

struct MeanOptions {
  double tol = 1e-9;      // relative agreement of consecutive levels
  int max_level = 0;      // 0: 18 on the circle, start + 3 otherwise
  double smoothing = 0.0;  // adds this constant to |f|^2
};

namespace detail {

// |f_sel(r zeta_i)|^2 on the nodes of `rule`.
inline std::vector<double> squared_on_sphere(const MapSpec& map, double r, const SphereRule& rule,
                                             const Selection& sel) {
  std::vector<double> q(rule.size());
  Eigen::VectorXd x(rule.dim);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    x = r * rule.nodes.col(static_cast<Eigen::Index>(i));
    q[i] = sel.squared(eval(map, x));
    if (!std::isfinite(q[i]))
      throw EvaluationError("integral mean: non-finite map value", std::vector<double>(x.data(), x.data() + x.size()));
  }
  return q;
}

// Circle values at the next level: the old nodes are the even ones.
inline std::vector<double> refine_circle(const MapSpec& map, double r, const std::vector<double>& old,
                                         const Selection& sel) {
  const std::size_t n_old = old.size();
  std::vector<double> q(2 * n_old);
  Eigen::VectorXd x(2);
  for (std::size_t k = 0; k < n_old; ++k) {
    q[2 * k] = old[k];
    const double theta = 2.0 * std::numbers::pi * (2.0 * k + 1.0) / (2.0 * n_old);
    x << r * std::cos(theta), r * std::sin(theta);
    q[2 * k + 1] = sel.squared(eval(map, x));
    if (!std::isfinite(q[2 * k + 1])) throw EvaluationError("integral mean: non-finite map value", {x(0), x(1)});
  }
  return q;
}

inline double power_integral(const std::vector<double>& q, const std::vector<double>& w, double p, double s) {
  double sum = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) sum += w[i] * std::pow(q[i] + s, 0.5 * p);
  return sum;
}

inline double power_integral_uniform(const std::vector<double>& q, double p, double s) {
  double sum = 0.0;
  for (double v : q) sum += std::pow(v + s, 0.5 * p);
  return sum / static_cast<double>(q.size());
}

}  // namespace detail

/// M_p(r, f) for several exponents at once, sharing the node evaluations.
/// Product rules are refined level by level from rule.level until every mean
/// agrees with the previous level within opts.tol (relative above 1, absolute
/// below); the last
/// difference is the error estimate. Monte Carlo rules report the
/// propagated standard error.
inline std::vector<Estimate> integral_means(const MapSpec& map, double r, const std::vector<double>& ps,
                                            const SphereRule& rule, const Selection& sel = {},
                                            const MeanOptions& opts = {}) {
  if (!(r >= 0.0 && r < 1.0)) throw InvalidArgument("integral_mean: r must lie in [0, 1)");
  for (double p : ps)
    if (!(p > 0.0)) throw InvalidArgument("integral_mean: p must be positive");
  if (rule.dim != domain_dim(map)) throw InvalidArgument("integral_mean: rule dimension does not match the map");

  std::vector<Estimate> out(ps.size());
  if (r == 0.0) {
    const double q0 = sel.squared(eval(map, Eigen::VectorXd::Zero(rule.dim))) + opts.smoothing;
    for (std::size_t i = 0; i < ps.size(); ++i) out[i] = {std::sqrt(q0), 0.0};
    return out;
  }

  auto means_of = [&](const std::vector<double>& q, const std::vector<double>* w) {
    std::vector<double> m(ps.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const double integral =
          w ? detail::power_integral(q, *w, ps[i], opts.smoothing) : detail::power_integral_uniform(q, ps[i], opts.smoothing);
      m[i] = std::pow(integral, 1.0 / ps[i]);
    }
    return m;
  };

  if (rule.method == SphereMethod::monte_carlo) {
    const auto q = detail::squared_on_sphere(map, r, rule, sel);
    const double count = static_cast<double>(q.size());
    for (std::size_t i = 0; i < ps.size(); ++i) {
      double sum = 0.0;
      double sum_sq = 0.0;
      for (double v : q) {
        const double y = std::pow(v + opts.smoothing, 0.5 * ps[i]);
        sum += y;
        sum_sq += y * y;
      }
      const double mean = sum / count;
      const double var = std::max(0.0, sum_sq / count - mean * mean) * count / (count - 1.0);
      const double se = std::sqrt(var / count);
      const double m = std::pow(mean, 1.0 / ps[i]);
      out[i] = {m, mean > 0.0 ? m * se / (ps[i] * mean) : 0.0};
    }
    return out;
  }

  const bool circle = rule.dim == 2;
  const int start = rule.level;
  const double tol = opts.tol;
  const int max_level = opts.max_level > 0 ? opts.max_level : (circle ? std::max(18, start + 1) : start + 3);
  std::vector<double> q = detail::squared_on_sphere(map, r, rule, sel);
  std::vector<double> prev = means_of(q, circle ? nullptr : &rule.weights);
  double worst = 0.0;
  for (int level = start + 1; level <= max_level; ++level) {
    std::vector<double> cur;
    if (circle) {
      q = detail::refine_circle(map, r, q, sel);
      cur = means_of(q, nullptr);
    } else {
      const SphereRule finer = sphere_rule(rule.dim, level);
      q = detail::squared_on_sphere(map, r, finer, sel);
      cur = means_of(q, &finer.weights);
    }
    bool ok = true;
    worst = 0.0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const double diff = std::abs(cur[i] - prev[i]);
      worst = std::max(worst, diff / std::max(1.0, cur[i]));
      if (diff > tol * std::max(1.0, cur[i])) ok = false;
      out[i] = {cur[i], diff};
    }
    if (ok) return out;
    prev = std::move(cur);
  }
  throw ConvergenceFailure("integral_mean: sphere rule did not converge", out.empty() ? 0.0 : out[0].value, worst);
}

inline Estimate integral_mean(const MapSpec& map, double r, double p, const SphereRule& rule,
                              const Selection& sel = {}, const MeanOptions& opts = {}) {
  return integral_means(map, r, {p}, rule, sel, opts)[0];
}

/// Default sphere rule for a map: 8 nodes on the circle, level 2 otherwise.
inline SphereRule default_sphere_rule(const MapSpec& map) {
  const int d = domain_dim(map);
  return sphere_rule(d, d == 2 ? 1 : 2);
}

inline std::vector<double> default_r_grid() {
  return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99, 0.995, 0.999};
}

struct LogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least-squares fit of values against log(1/(1-r)).
inline LogFit log_growth_fit(const std::vector<double>& r, const std::vector<double>& values) {
  const std::size_t n = r.size();
  if (n < 2 || values.size() != n) throw InvalidArgument("log_growth_fit: need at least two matching points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = -std::log1p(-r[i]);
    sx += x;
    sy += values[i];
    sxx += x * x;
    sxy += x * values[i];
    syy += values[i] * values[i];
  }
  const double cxx = sxx - sx * sx / n;
  const double cxy = sxy - sx * sy / n;
  const double cyy = syy - sy * sy / n;
  LogFit fit;
  fit.slope = cxx > 0 ? cxy / cxx : 0.0;
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.r_squared = (cxx > 0 && cyy > 0) ? (cxy * cxy) / (cxx * cyy) : 0.0;
  return fit;
}

struct HardyNorm {
  double sup = 0.0;
  double err = 0.0;
  bool diverges = false;
  std::vector<double> r_grid;
  std::vector<Estimate> means;
  LogFit tail_fit;
};

/// Grid supremum of M_p(r, f) for several exponents, sharing node
/// evaluations. The divergence flag is a numerical indicator: each of the
/// last three grid steps raises the mean by more than 10% and the last four
/// means fit a line in log(1/(1-r)) with R^2 > 0.99.
inline std::vector<HardyNorm> hardy_norms(const MapSpec& map, const std::vector<double>& ps,
                                          const std::vector<double>& r_grid, const SphereRule& rule,
                                          const Selection& sel = {}, const MeanOptions& opts = {}) {
  if (r_grid.empty()) throw InvalidArgument("hardy_norm: empty radius grid");
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    if (!(r_grid[i] >= 0.0 && r_grid[i] < 1.0)) throw InvalidArgument("hardy_norm: radii must lie in [0, 1)");
    if (i > 0 && !(r_grid[i] > r_grid[i - 1])) throw InvalidArgument("hardy_norm: radius grid must increase");
  }
  std::vector<HardyNorm> out(ps.size());
  for (auto& h : out) h.r_grid = r_grid;
  for (double r : r_grid) {
    const auto es = integral_means(map, r, ps, rule, sel, opts);
    for (std::size_t k = 0; k < ps.size(); ++k) {
      out[k].means.push_back(es[k]);
      if (es[k].value >= out[k].sup) {
        out[k].sup = es[k].value;
        out[k].err = es[k].err;
      }
    }
  }
  const std::size_t n = r_grid.size();
  if (n >= 4) {
    for (auto& h : out) {
      bool growing = true;
      for (std::size_t i = n - 3; i < n; ++i)
        if (!(h.means[i].value > 1.1 * h.means[i - 1].value)) growing = false;
      std::vector<double> rr(r_grid.end() - 4, r_grid.end());
      std::vector<double> vv;
      for (std::size_t i = n - 4; i < n; ++i) vv.push_back(h.means[i].value);
      h.tail_fit = log_growth_fit(rr, vv);
      h.diverges = growing && h.tail_fit.r_squared > 0.99;
    }
  }
  return out;
}

inline HardyNorm hardy_norm(const MapSpec& map, double p, const std::vector<double>& r_grid, const SphereRule& rule,
                            const Selection& sel = {}, const MeanOptions& opts = {}) {
  return hardy_norms(map, {p}, r_grid, rule, sel, opts)[0];
}

struct MeansRow {
  double r = 0.0;
  double p = 0.0;
  double value = 0.0;
  double err = 0.0;
};

struct MeansTable {
  std::vector<MeansRow> rows;

  std::string to_csv() const {
    std::ostringstream os;
    os << "r,p,value,err\n" << std::setprecision(17);
    for (const auto& row : rows) os << row.r << ',' << row.p << ',' << row.value << ',' << row.err << '\n';
    return os.str();
  }
};

inline MeansTable means_table(const MapSpec& map, const std::vector<double>& r_grid, const std::vector<double>& ps,
                              const SphereRule& rule, const Selection& sel = {}, const MeanOptions& opts = {}) {
  MeansTable t;
  for (double r : r_grid) {
    const auto es = integral_means(map, r, ps, rule, sel, opts);
    for (std::size_t i = 0; i < ps.size(); ++i) t.rows.push_back({r, ps[i], es[i].value, es[i].err});
  }
  return t;
}

// ---------------------------------------------------------------------------
// Planar conjugation

/// u(r e^{i theta}) = a0 + sum_k r^k (a_k cos k theta + b_k sin k theta), k >= 1.
struct TrigSeries {
  double a0 = 0.0;
  std::vector<double> a;
  std::vector<double> b;

  double operator()(double r, double theta) const {
    double s = a0;
    double rk = 1.0;
    for (std::size_t k = 0; k < std::max(a.size(), b.size()); ++k) {
      rk *= r;
      const double ak = k < a.size() ? a[k] : 0.0;
      const double bk = k < b.size() ? b[k] : 0.0;
      s += rk * (ak * std::cos((k + 1.0) * theta) + bk * std::sin((k + 1.0) * theta));
    }
    return s;
  }
};

/// Harmonic conjugate with v(0) = 0: a_k -> -b_k, b_k -> a_k.
inline TrigSeries conjugate_disk(const TrigSeries& u) {
  TrigSeries v;
  const std::size_t d = std::max(u.a.size(), u.b.size());
  v.a.assign(d, 0.0);
  v.b.assign(d, 0.0);
  for (std::size_t k = 0; k < d; ++k) {
    v.a[k] = k < u.b.size() ? -u.b[k] : 0.0;
    v.b[k] = k < u.a.size() ? u.a[k] : 0.0;
  }
  return v;
}

/// The analytic F = u + i v with v = conjugate_disk(u): c_0 = a0, c_k = a_k - i b_k.
inline std::vector<cplx> analytic_coefficients(const TrigSeries& u) {
  const std::size_t d = std::max(u.a.size(), u.b.size());
  std::vector<cplx> c(d + 1);
  c[0] = u.a0;
  for (std::size_t k = 0; k < d; ++k)
    c[k + 1] = cplx(k < u.a.size() ? u.a[k] : 0.0, k < u.b.size() ? -u.b[k] : 0.0);
  return c;
}

/// Real part of a_0 + sum a_k z^k as a trigonometric series.
inline TrigSeries real_part_series(const std::vector<cplx>& coeffs) {
  TrigSeries u;
  if (coeffs.empty()) return u;
  u.a0 = coeffs[0].real();
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    u.a.push_back(coeffs[k].real());
    u.b.push_back(-coeffs[k].imag());
  }
  return u;
}

// ---------------------------------------------------------------------------
// Green functions and identities

/// (s^{2-n} - r^{2-n}) / (n(n-2)) for n >= 3, (1/2) log(r/s) for n = 2.
inline double green_G(int n, double s, double r) {
  if (n < 2) throw InvalidArgument("green_G: dimension must be at least 2");
  if (!(s > 0.0)) throw InvalidArgument("green_G: s must be positive");
  if (!(s <= r && r < 1.0)) throw InvalidArgument("green_G: need 0 < s <= r < 1");
  if (n == 2) return 0.5 * std::log(r / s);
  return (std::pow(s, 2.0 - n) - std::pow(r, 2.0 - n)) / (n * (n - 2.0));
}

/// (1/n) int_s^r (1-t^2)^{n-2} t^{1-n} dt by adaptive quadrature.
inline double green_g_hyperbolic(int n, double s, double r) {
  if (n < 2) throw InvalidArgument("green_g_hyperbolic: dimension must be at least 2");
  if (!(s > 0.0)) throw InvalidArgument("green_g_hyperbolic: s must be positive");
  if (!(s <= r && r < 1.0)) throw InvalidArgument("green_g_hyperbolic: need 0 < s <= r < 1");
  if (s == r) return 0.0;
  auto integrand = [n](double t) { return std::pow(1.0 - t * t, n - 2) * std::pow(t, 1 - n); };
  // Integrate in log t: the integrand t^{1-n} becomes tame.
  auto in_log = [&](double u) {
    const double t = std::exp(u);
    return integrand(t) * t;
  };
  AdaptiveOptions opt;
  opt.abs_tol = 1e-15;
  opt.rel_tol = 1e-13;
  return integrate_adaptive(in_log, std::log(s), std::log(r), opt).value / n;
}

struct GreenIdentity {
  double lhs = 0.0;       // sphere mean minus value at the origin
  double rhs = 0.0;       // ball integral
  double residual = 0.0;  // |lhs - rhs|
  double err = 0.0;       // combined quadrature error estimate
};

struct GreenOptions {
  double tol = 1e-11;     // absolute tolerance of the adaptive integrals
  int sphere_level = 4;   // product rule on spheres for n >= 3
  int ball_radial_level = 2;  // invariant identity: ball rule levels (compared with +1)
  int ball_sphere_level = 2;
};

namespace detail {

// psi = (|f|^2 + eps)^{p/2} and its Laplacian from a jet.
inline double smoothed_power(const JetData& j, double p, double eps) {
  return std::pow(j.value.squaredNorm() + eps, 0.5 * p);
}

inline double smoothed_power_laplacian(const JetData& j, double p, double eps) {
  const double q = j.value.squaredNorm() + eps;
  const Eigen::VectorXd grad_q = 2.0 * j.jacobian_real.transpose() * j.value;
  const double lap_q = 2.0 * (j.jacobian_real.squaredNorm() + j.value.dot(j.laplacians));
  const double h = 0.5 * p;
  double first = 0.0;
  if (q > 0.0) first = h * (h - 1.0) * std::pow(q, h - 2.0) * grad_q.squaredNorm();
  const double second = q > 0.0 ? h * std::pow(q, h - 1.0) * lap_q : (h == 1.0 ? lap_q : 0.0);
  return first + second;
}

template <class F>
Estimate sphere_mean_adaptive(int n, double r, F&& psi, const GreenOptions& opt) {
  Eigen::VectorXd x(n);
  if (n == 2) {
    auto on_circle = [&](double theta) {
      x << r * std::cos(theta), r * std::sin(theta);
      return psi(x);
    };
    AdaptiveOptions a;
    a.abs_tol = opt.tol;
    a.rel_tol = 1e-13;
    Estimate e = integrate_adaptive(on_circle, 0.0, 2.0 * std::numbers::pi, a);
    return {e.value / (2.0 * std::numbers::pi), e.err / (2.0 * std::numbers::pi)};
  }
  auto at_level = [&](int level) {
    const SphereRule rule = sphere_rule(n, level);
    return integrate_sphere(rule, [&](const Eigen::VectorXd& z) {
             x = r * z;
             return psi(x);
           }).value;
  };
  return refine_levels(at_level, opt.sphere_level, opt.sphere_level + 3, 1e-10);
}

}  // namespace detail

/// Euclidean Green identity for psi = F^p, F = (|f|^2 + eps)^{1/2}:
///   int_S psi(r zeta) dsigma - psi(0) = int_{B_r} Lap(psi) G_n(|x|, r) dV_N.
/// eps = 1/mu when p < 2 and 0 otherwise.
inline GreenIdentity hardy_stein_residual(const MapSpec& map, double r, double p, double mu = 1e6,
                                          const GreenOptions& opt = {}) {
  if (!(r > 0.0 && r < 1.0)) throw InvalidArgument("hardy_stein_residual: r must lie in (0, 1)");
  if (!(p > 1.0)) throw InvalidArgument("hardy_stein_residual: p must exceed 1");
  if (!(mu >= 1.0)) throw InvalidArgument("hardy_stein_residual: mu must be at least 1");
  const int n = domain_dim(map);
  const double eps = p < 2.0 ? 1.0 / mu : 0.0;

  auto psi = [&](const Eigen::VectorXd& x) { return std::pow(eval(map, x).squaredNorm() + eps, 0.5 * p); };
  const Estimate mean = detail::sphere_mean_adaptive(n, r, psi, opt);
  const double psi0 = psi(Eigen::VectorXd::Zero(n));

  auto integrand = [&](const Eigen::VectorXd& x) {
    const double s = x.norm();
    if (s == 0.0) return 0.0;
    return detail::smoothed_power_laplacian(jet(map, x), p, eps) * green_G(n, std::min(s, r), r);
  };
  AdaptiveOptions a;
  a.abs_tol = opt.tol;
  a.rel_tol = 1e-12;
  a.max_intervals = 20000;
  const Estimate ball = integrate_ball_adaptive(n, r, integrand, a, opt.sphere_level);

  GreenIdentity g;
  g.lhs = mean.value - psi0;
  g.rhs = ball.value;
  g.residual = std::abs(g.lhs - g.rhs);
  g.err = mean.err + ball.err;
  return g;
}

namespace detail {

inline double invariant_laplacian_of_square(const JetData& j, const Eigen::VectorXd& x) {
  const double n = static_cast<double>(x.size());
  const double w = 1.0 - x.squaredNorm();
  const double lap = 2.0 * (j.jacobian_real.squaredNorm() + j.value.dot(j.laplacians));
  const Eigen::VectorXd grad = 2.0 * j.jacobian_real.transpose() * j.value;
  return w * w * lap + 2.0 * (n - 2.0) * w * grad.dot(x);
}

}  // namespace detail

/// Invariant Green identity for psi = |f|^2:
///   int_S psi(r zeta) dsigma - psi(0) = int_{B_r} g(|x|, r) Lap_h(psi) dV_h,
/// dV_h = (1-|x|^2)^{-n} dV_N. Ball quadrature at two radial/sphere levels;
/// their difference is the error estimate.
inline GreenIdentity invariant_green_residual(const MapSpec& map, double r, const GreenOptions& opt = {}) {
  if (!(r > 0.0 && r < 1.0)) throw InvalidArgument("invariant_green_residual: r must lie in (0, 1)");
  const int n = domain_dim(map);
  auto psi = [&](const Eigen::VectorXd& x) { return eval(map, x).squaredNorm(); };
  GreenOptions sphere_opt = opt;
  sphere_opt.sphere_level = opt.ball_sphere_level;
  const Estimate mean = detail::sphere_mean_adaptive(n, r, psi, sphere_opt);
  const double psi0 = psi(Eigen::VectorXd::Zero(n));

  auto ball_at = [&](int radial_level, int sphere_level) {
    const BallRule rule = ball_rule(n, r, radial_level, sphere_level);
    double sum = 0.0;
    Eigen::VectorXd x(n);
    for (std::size_t i = 0; i < rule.radial_nodes.size(); ++i) {
      const double rho = rule.radial_nodes[i];
      const double g = green_g_hyperbolic(n, rho, r);
      const double vol = std::pow(1.0 - rho * rho, -n);
      double shell = 0.0;
      for (std::size_t k = 0; k < rule.sphere.size(); ++k) {
        x = rho * rule.sphere.nodes.col(static_cast<Eigen::Index>(k));
        shell += rule.sphere.weights[k] * detail::invariant_laplacian_of_square(jet(map, x), x);
      }
      sum += rule.radial_weights[i] * g * vol * shell;
    }
    return sum;
  };
  const int sl = n == 2 ? opt.ball_sphere_level + 3 : opt.ball_sphere_level;
  const double coarse = ball_at(opt.ball_radial_level, sl);
  const double fine = ball_at(opt.ball_radial_level + 1, sl + 1);

  GreenIdentity g;
  g.lhs = mean.value - psi0;
  g.rhs = fine;
  g.residual = std::abs(g.lhs - g.rhs);
  g.err = mean.err + std::abs(fine - coarse);
  return g;
}

// ---------------------------------------------------------------------------
// Radial square functions

struct SquareFunction {
  double value = 0.0;
  double err = 0.0;
  bool diverges = false;
};

namespace detail {

inline Eigen::VectorXd unit_direction(const MapSpec& map, const Eigen::VectorXd& zeta) {
  if (zeta.size() != domain_dim(map)) throw InvalidArgument("square function: direction has wrong dimension");
  if (std::abs(zeta.norm() - 1.0) > 1e-12) throw InvalidArgument("square function: direction must be a unit vector");
  return zeta;
}

// (int_0^b w(r, jet(r zeta)) dr)^{1/2} with b = min(1, evaluation cap); the
// rule at its level and the next one give the error estimate.
template <class Weight>
SquareFunction radial_square(const MapSpec& map, const Eigen::VectorXd& zeta, const RadialRule& rule, Weight&& w) {
  const double b = std::min(1.0, evaluation_cap(map));
  auto integral = [&](const RadialRule& rr, double& last) {
    double s = 0.0;
    for (std::size_t i = 0; i < rr.nodes.size(); ++i) {
      const double r = b * rr.nodes[i];
      const double v = w(r, jet(map, Eigen::VectorXd(r * zeta)));
      if (!std::isfinite(v)) throw EvaluationError("square function: non-finite integrand", {r});
      s += b * rr.weights[i] * v;
      last = v;
    }
    return s;
  };
  double last_coarse = 0.0, last_fine = 0.0;
  const double coarse = integral(rule, last_coarse);
  const double fine = integral(radial_rule(rule.level + 1), last_fine);
  SquareFunction out;
  out.value = std::sqrt(std::max(0.0, fine));
  const double tail = (1.0 - b) * std::abs(last_fine);
  const double ierr = std::abs(fine - coarse) + tail;
  out.err = out.value > 0.0 ? ierr / (2.0 * out.value) : std::sqrt(ierr);
  out.diverges = std::abs(fine - coarse) > 0.1 * std::abs(fine) && fine > coarse;
  return out;
}

}  // namespace detail

/// (int_0^1 |Df(r zeta)|^2 (1-r) dr)^{1/2}, |Df| the Frobenius norm of the
/// complex derivative.
inline SquareFunction littlewood_paley_g(const MapSpec& map, const Eigen::VectorXd& zeta, const RadialRule& rule) {
  if (complex_dim(map) == 0) throw InvalidArgument("littlewood_paley_g: map has no complex structure");
  const Eigen::VectorXd dir = detail::unit_direction(map, zeta);
  return detail::radial_square(map, dir, rule,
                               [](double r, const JetData& j) { return j.Df.squaredNorm() * (1.0 - r); });
}

/// (int_0^1 |(1-r^2) grad f(r zeta)|^2 / (1-r) dr)^{1/2}, evaluated with the
/// weight (1-r)(1+r)^2 after cancelling (1-r^2)^2 / (1-r).
inline SquareFunction g_tilde(const MapSpec& map, const Eigen::VectorXd& zeta, const RadialRule& rule) {
  const Eigen::VectorXd dir = detail::unit_direction(map, zeta);
  return detail::radial_square(map, dir, rule, [](double r, const JetData& j) {
    return (1.0 - r) * (1.0 + r) * (1.0 + r) * j.jacobian_real.squaredNorm();
  });
}

/// (int_0^1 (1-r) Lap(|f|^2)(r zeta) dr)^{1/2} with
/// Lap |f|^2 = 2 sum_j (|grad f_j|^2 + f_j Lap f_j).
inline SquareFunction stoll_G(const MapSpec& map, const Eigen::VectorXd& zeta, const RadialRule& rule) {
  const Eigen::VectorXd dir = detail::unit_direction(map, zeta);
  return detail::radial_square(map, dir, rule, [](double r, const JetData& j) {
    return (1.0 - r) * 2.0 * (j.jacobian_real.squaredNorm() + j.value.dot(j.laplacians));
  });
}

// ---------------------------------------------------------------------------
// Non-tangential maximal function

struct NontangentialMax {
  double value = 0.0;      // sampled lower bound of the supremum over the region
  int points_used = 0;     // skeleton points inside the region
  int skeleton_size = 0;   // all skeleton points
};

/// Sampled maximum of phi over {y : |y - zeta| < alpha (1 - |y|)}.
///
/// Skeleton (independent of alpha, so the result is nondecreasing in alpha):
/// depths d_k = 2^{-k}, k < depth_levels, radius 1 - d_k; polar offsets
/// theta = d_k * s for s in {0, 1/4, ..., 16}, clipped to pi; tangent
/// directions +-e_i of an orthonormal basis of zeta's complement.
template <class Phi>
NontangentialMax nontangential_max(Phi&& phi, const Eigen::VectorXd& zeta, double alpha, int depth_levels,
                                   double cap = 1.0) {
  if (!(alpha > 1.0)) throw InvalidArgument("nontangential_max: alpha must exceed 1");
  if (depth_levels < 1) throw InvalidArgument("nontangential_max: need at least one depth level");
  const int n = static_cast<int>(zeta.size());
  if (n < 2 || std::abs(zeta.norm() - 1.0) > 1e-12)
    throw InvalidArgument("nontangential_max: zeta must be a unit vector in R^n, n >= 2");

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(zeta);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd tangents = q.rightCols(n - 1);

  NontangentialMax out;
  out.value = 0.0;
  bool any = false;
  for (int k = 0; k < depth_levels; ++k) {
    const double d = std::ldexp(1.0, -k);
    const double rho = 1.0 - d;
    if (rho > cap) continue;
    for (int si = 0; si <= 64; ++si) {
      const double theta = std::min(std::numbers::pi, d * 0.25 * si);
      const int dirs = si == 0 ? 1 : 2 * (n - 1);
      for (int t = 0; t < dirs; ++t) {
        ++out.skeleton_size;
        Eigen::VectorXd y = std::cos(theta) * zeta;
        if (si > 0) y += std::sin(theta) * (t % 2 == 0 ? 1.0 : -1.0) * tangents.col(t / 2);
        y *= rho;
        if (!((y - zeta).norm() < alpha * (1.0 - y.norm()))) continue;
        const double v = phi(y);
        ++out.points_used;
        if (!any || v > out.value) out.value = v;
        any = true;
      }
    }
  }
  return out;
}

inline NontangentialMax nontangential_max(const MapSpec& map, const Eigen::VectorXd& zeta, double alpha,
                                          int depth_levels) {
  if (zeta.size() != domain_dim(map)) throw InvalidArgument("nontangential_max: direction has wrong dimension");
  return nontangential_max([&](const Eigen::VectorXd& y) { return eval(map, y).norm(); }, zeta, alpha, depth_levels,
                           evaluation_cap(map));
}

}  // namespace rieszlab
