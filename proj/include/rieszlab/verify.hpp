#pragma once

// Numerical checks of the conjugate-function inequalities, the sharpness
// example and the counterexamples, each producing a VerificationReport.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rieszlab/calculus.hpp"
#include "rieszlab/error.hpp"
#include "rieszlab/hardy.hpp"
#include "rieszlab/maps.hpp"
#include "rieszlab/polynomial.hpp"
#include "rieszlab/quadrature.hpp"

namespace rieszlab {

inline constexpr std::uint64_t default_seed = 0x5EED;

enum class Verdict { pass, fail, inconclusive };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::fail:
      return "fail";
    case Verdict::inconclusive:
      return "inconclusive";
    default:
      return "pass";
  }
}

/// strict: pass iff margin >= -err, otherwise fail.
/// downgrade: as strict, but a margin in [-10 err, -err) is inconclusive
/// (used where a sampled dilatation stands in for the true constant).
enum class Policy { strict, downgrade };

inline Verdict judge(double margin, double err, Policy policy) {
  if (std::isnan(margin) || std::isnan(err)) return Verdict::inconclusive;
  if (margin >= -err) return Verdict::pass;
  if (policy == Policy::downgrade && margin >= -10.0 * err) return Verdict::inconclusive;
  return Verdict::fail;
}

/// Adds the floating-point floor 1e-11 * max(|lhs|, |rhs|) to a quadrature error.
inline double floored_err(double err, double lhs, double rhs) {
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  return err + (std::isfinite(scale) ? 1e-11 * scale : 0.0);
}

struct ReportRow {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double err = 0.0;
  Verdict verdict = Verdict::pass;
};

inline ReportRow make_row(std::string label, double lhs, double rhs, double err, Policy policy = Policy::strict,
                          bool floor = true) {
  ReportRow row;
  row.label = std::move(label);
  row.lhs = lhs;
  row.rhs = rhs;
  row.margin = rhs - lhs;
  row.err = floor ? floored_err(err, lhs, rhs) : err;
  row.verdict = judge(row.margin, row.err, policy);
  return row;
}

inline ReportRow inconclusive_row(std::string label, double err = std::numeric_limits<double>::quiet_NaN()) {
  ReportRow row;
  row.label = std::move(label);
  row.lhs = row.rhs = row.margin = std::numeric_limits<double>::quiet_NaN();
  row.err = err;
  row.verdict = Verdict::inconclusive;
  return row;
}

inline std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string num_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + num(v[i]);
  return s;
}

struct VerificationReport {
  std::string check_name;
  std::vector<std::pair<std::string, std::string>> params;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double err = 0.0;
  Verdict verdict = Verdict::pass;
  std::string note;
  std::vector<ReportRow> rows;

  VerificationReport& param(const std::string& key, const std::string& value) {
    params.emplace_back(key, value);
    return *this;
  }
  VerificationReport& param(const std::string& key, double value) { return param(key, num(value)); }
  VerificationReport& param(const std::string& key, int value) { return param(key, std::to_string(value)); }

  /// Measured quantities; unlike params they are not part of a record's identity.
  std::vector<std::pair<std::string, std::string>> results;
  VerificationReport& result(const std::string& key, const std::string& value) {
    results.emplace_back(key, value);
    return *this;
  }
  VerificationReport& result(const std::string& key, double value) { return result(key, num(value)); }
  VerificationReport& result(const std::string& key, int value) { return result(key, std::to_string(value)); }

  /// Verdict = worst row (fail over inconclusive over pass); the headline
  /// lhs/rhs/margin/err come from the tightest row, i.e. the smallest margin + err.
  void finalize() {
    if (rows.empty()) return;
    verdict = Verdict::pass;
    const ReportRow* tight = nullptr;
    for (const auto& row : rows) {
      if (row.verdict == Verdict::fail) verdict = Verdict::fail;
      if (row.verdict == Verdict::inconclusive && verdict == Verdict::pass) verdict = Verdict::inconclusive;
      const double slack = row.margin + row.err;
      if (std::isnan(slack)) continue;
      if (!tight || slack < tight->margin + tight->err) tight = &row;
    }
    if (tight) {
      lhs = tight->lhs;
      rhs = tight->rhs;
      margin = tight->margin;
      err = tight->err;
    } else {
      lhs = rhs = margin = err = std::numeric_limits<double>::quiet_NaN();
    }
  }
};

inline Verdict worst_verdict(const std::vector<VerificationReport>& reports) {
  Verdict v = Verdict::pass;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::fail) return Verdict::fail;
    if (r.verdict == Verdict::inconclusive) v = Verdict::inconclusive;
  }
  return v;
}

struct CheckOptions {
  double mean_tol = 1e-9;
  double extension_mean_tol = 1e-4;  // |f_j|^p has kinks on the sphere; the rule converges algebraically
  double vector_mean_tol = 1e-6;     // |(u_1,...,u_n)|^p has a conical zero set for n >= 2
  int dilatation_samples = 500;
  double dilatation_radius = 0.95;
};

// ---------------------------------------------------------------------------
// Constants

inline double conjugate_exponent_max(double p) { return std::max(p, p / (p - 1.0)); }

/// cot(pi / (2 p*)), the sharp Riesz constant.
inline double riesz_constant(double p) {
  if (!(p > 1.0)) throw InvalidArgument("riesz_constant: p must exceed 1");
  return 1.0 / std::tan(std::numbers::pi / (2.0 * conjugate_exponent_max(p)));
}

inline double riesz_analytic_constant(double p) {
  if (!(p > 1.0)) throw InvalidArgument("riesz_analytic_constant: p must exceed 1");
  return 1.0 / std::sin(std::numbers::pi / (2.0 * conjugate_exponent_max(p)));
}

/// 2n(1 + kappa^2) / ((p - 1)(1 - kappa)^2).
inline double pluriharmonic_power_constant(int n, double kappa, double p) {
  return 2.0 * n * (1.0 + kappa * kappa) / ((p - 1.0) * (1.0 - kappa) * (1.0 - kappa));
}

// ---------------------------------------------------------------------------
// Seeded families

namespace detail {

inline cplx uniform_disk(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double rad = std::sqrt(u(rng));
  const double ang = 2.0 * std::numbers::pi * u(rng);
  return std::polar(rad, ang);
}

inline double uniform(std::mt19937_64& rng, double a, double b) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

inline int uniform_int(std::mt19937_64& rng, int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }

inline std::vector<cplx> convolve(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

inline Eigen::MatrixXcd random_unitary(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

}  // namespace detail

/// Coefficients a_0..a_d, d uniform in [1, 10], each uniform in the unit disk.
inline std::vector<cplx> random_disk_polynomial(std::mt19937_64& rng) {
  const int d = detail::uniform_int(rng, 1, 10);
  std::vector<cplx> c(d + 1);
  for (auto& x : c) x = detail::uniform_disk(rng);
  return c;
}

struct PlanarFamilyMember {
  MapSpec map;
  double kappa = 0.0;
  std::vector<cplx> h;
  std::vector<cplx> g;
};

/// h = a_0 + z + sum_{k=2}^{d} a_k z^k with sum k |a_k| < 0.9 (so h' has no
/// zeros in the disk), g' = kappa h' q with sum |q_k| <= 1, g(0) = 0. Then
/// |g'/h'| <= kappa and f = h + conj(g) is K-quasiregular, K = (1+kappa)/(1-kappa).
inline PlanarFamilyMember random_planar_qr(std::mt19937_64& rng, double kappa) {
  const int dh = detail::uniform_int(rng, 2, 5);
  std::vector<cplx> h(dh + 1);
  h[0] = detail::uniform_disk(rng);
  h[1] = 1.0;
  double weighted = 0.0;
  for (int k = 2; k <= dh; ++k) {
    h[k] = detail::uniform_disk(rng);
    weighted += k * std::abs(h[k]);
  }
  const double s = detail::uniform(rng, 0.1, 0.9) / std::max(weighted, 1e-12);
  for (int k = 2; k <= dh; ++k) h[k] *= s;

  const int dq = detail::uniform_int(rng, 0, 4);
  std::vector<cplx> q(dq + 1);
  double total = 0.0;
  for (auto& x : q) {
    x = detail::uniform_disk(rng);
    total += std::abs(x);
  }
  const double t = detail::uniform(rng, 0.5, 1.0) / std::max(total, 1e-12);
  for (auto& x : q) x *= t;

  std::vector<cplx> hp(dh);
  for (int k = 1; k <= dh; ++k) hp[k - 1] = static_cast<double>(k) * h[k];
  const std::vector<cplx> gp = detail::convolve(hp, q);
  std::vector<cplx> g(gp.size() + 1, 0.0);
  for (std::size_t k = 0; k < gp.size(); ++k) g[k + 1] = kappa * gp[k] / static_cast<double>(k + 1);
  return {planar_harmonic(h, g), kappa, h, g};
}

/// The seeded planar family of the corollary suite: kappa uniform in [0.1, 0.6].
inline std::vector<PlanarFamilyMember> planar_family(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::vector<PlanarFamilyMember> out;
  for (int i = 0; i < count; ++i) {
    const double kappa = detail::uniform(rng, 0.1, 0.6);
    out.push_back(random_planar_qr(rng, kappa));
  }
  return out;
}

struct PluriharmonicFamilyMember {
  MapSpec map;
  double kappa = 0.0;
  double omega_sup = 0.0;
};

/// h = c + z + small polynomial terms (c real), g = kappa U (h - h(0)) with U
/// unitary, so that omega_f = kappa U. Candidates whose sampled ||omega_f||
/// exceeds kappa, or whose Df is singular on the sample, are redrawn.
inline PluriharmonicFamilyMember random_pluriharmonic(std::mt19937_64& rng, int n, double kappa) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<std::vector<HolomorphicPolynomial::Term>> comps(n);
    for (int k = 0; k < n; ++k) {
      comps[k].push_back({cplx(detail::uniform(rng, -1.0, 1.0)), std::vector<int>(n, 0)});
      std::vector<int> lin(n, 0);
      lin[k] = 1;
      comps[k].push_back({cplx(1.0), lin});
      const int extra = detail::uniform_int(rng, 1, 4);
      for (int e = 0; e < extra; ++e) {
        std::vector<int> pw(n, 0);
        const int deg = detail::uniform_int(rng, 2, 4);
        for (int d = 0; d < deg; ++d) pw[detail::uniform_int(rng, 0, n - 1)] += 1;
        comps[k].push_back({0.35 / (deg * extra * n) * detail::uniform_disk(rng), pw});
      }
    }
    const HolomorphicPolynomial h(n, comps);
    HolomorphicPolynomial g(n, std::vector<std::vector<HolomorphicPolynomial::Term>>(n));
    if (kappa > 0.0) {
      const Eigen::MatrixXcd U = kappa * detail::random_unitary(rng, n);
      g = h.transformed(U).shifted(-(U * h.at_origin()));
    }
    PluriharmonicFamilyMember member{pluriharmonic_pair(h, g), kappa, 0.0};
    bool ok = true;
    try {
      for (const auto& x : interior_sample(2 * n, 50, 0.95)) {
        member.omega_sup = std::max(member.omega_sup, second_dilatation(member.map, x).norm);
      }
    } catch (const SingularDerivative&) {
      ok = false;
    }
    if (ok && member.omega_sup <= kappa + 1e-9) return member;
  }
  throw Error("random_pluriharmonic: could not draw an admissible map");
}

/// Boundary data phi(zeta) = A zeta + small quadratic terms on S^{n-1}
/// (A near the identity); the hyperbolic Poisson extension is drawn again
/// when its sampled dilatation is infinite.
inline MapSpec random_invariant_extension(std::mt19937_64& rng, int n = 3, int level = 2) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<std::vector<RealPolynomial::Term>> comps(n);
    for (int k = 0; k < n; ++k) {
      for (int j = 0; j < n; ++j) {
        std::vector<int> pw(n, 0);
        pw[j] = 1;
        comps[k].push_back({(j == k ? 1.0 : 0.0) + 0.1 * gauss(rng) / std::sqrt(n), pw});
      }
      for (int e = 0; e < 2; ++e) {
        std::vector<int> pw(n, 0);
        pw[detail::uniform_int(rng, 0, n - 1)] += 1;
        pw[detail::uniform_int(rng, 0, n - 1)] += 1;
        comps[k].push_back({0.05 * gauss(rng), pw});
      }
    }
    MapSpec map = hyperbolic_poisson_extend(boundary_from_polynomial(RealPolynomial(n, comps)), level);
    if (std::isfinite(empirical_dilatation(map, 100, 0.95).K_hat)) return map;
  }
  throw Error("random_invariant_extension: could not draw a quasiregular extension");
}

// ---------------------------------------------------------------------------
// Hypothesis checks

namespace detail {

inline double max_laplacian_residual(const MapSpec& map, bool invariant, int count = 20, double radius = 0.9) {
  double worst = 0.0;
  for (const auto& x : interior_sample(domain_dim(map), count, radius)) {
    const JetData j = jet(map, x);
    const Eigen::VectorXd lap = invariant ? invariant_laplacian(j, x) : j.laplacians;
    const double scale = std::max({1.0, j.value.norm(), j.jacobian_real.norm()});
    worst = std::max(worst, lap.cwiseAbs().maxCoeff() / scale);
  }
  return worst;
}

inline double pow_err(double m, double err, double p) { return p * std::pow(m, p - 1.0) * err; }

}  // namespace detail

inline MeanOptions mean_options(const MapSpec& map, const CheckOptions& opt) {
  MeanOptions mo;
  mo.tol = is_extension(map) ? opt.extension_mean_tol : opt.mean_tol;
  return mo;
}

namespace detail {

}  // namespace detail

// ---------------------------------------------------------------------------
// Checks

/// M_p(r, v) <= cot(pi/(2p*)) M_p(r, u) and M_p(r, u + iv) <= M_p(r, u) / sin(pi/(2p*))
/// for every r in the grid, v the conjugate of u with v(0) = 0.
inline VerificationReport check_riesz_planar(const TrigSeries& u, double p, const std::vector<double>& r_grid,
                                             const CheckOptions& opt = {}) {
  if (!(p > 1.0)) throw InvalidArgument("check_riesz_planar: p must exceed 1");
  VerificationReport rep;
  rep.check_name = "riesz_planar";
  rep.param("p", p).param("p_star", conjugate_exponent_max(p)).param("degree", static_cast<int>(u.a.size()));
  rep.param("r_grid", num_list(r_grid));
  const double c = riesz_constant(p);
  const double cs = riesz_analytic_constant(p);
  const MapSpec F = disk_analytic(analytic_coefficients(u));
  const SphereRule rule = sphere_rule(2, 1);
  MeanOptions mo;
  mo.tol = opt.mean_tol;
  for (double r : r_grid) {
    try {
      const Estimate mu = integral_mean(F, r, p, rule, Selection::real_parts(), mo);
      const Estimate mv = integral_mean(F, r, p, rule, Selection::imag_parts(), mo);
      const Estimate mf = integral_mean(F, r, p, rule, Selection::whole(), mo);
      rep.rows.push_back(make_row("conjugate r=" + num(r), mv.value, c * mu.value, mv.err + c * mu.err));
      rep.rows.push_back(make_row("analytic r=" + num(r), mf.value, cs * mu.value, mf.err + cs * mu.err));
    } catch (const ConvergenceFailure& e) {
      rep.rows.push_back(inconclusive_row("r=" + num(r), e.error_estimate()));
      rep.note = "quadrature did not converge at some radius";
    }
  }
  rep.finalize();
  return rep;
}

/// Corollary bound for a harmonic K-quasiregular map of B^n into R^n:
///   M_p^p(r,f) <= |f(0)|^p + ((1 + (n-1)K^2)/(p-1)) (M_p^p(r,f_k) - |f_k(0)|^p),
/// with K replaced by the sampled dilatation K_hat. k is 0-based.
inline VerificationReport check_cor_1_2(const MapSpec& map, int k, double p, double r,
                                        const EmpiricalDilatation& khat, const CheckOptions& opt = {}) {
  if (!(p > 1.0 && p <= 2.0)) throw InvalidArgument("check_cor_1_2: p must lie in (1, 2]");
  if (!(r >= 0.0 && r < 1.0)) throw InvalidArgument("check_cor_1_2: r must lie in [0, 1)");
  const int n = domain_dim(map);
  if (codomain_dim(map) != n) throw InvalidArgument("check_cor_1_2: map must send B^n into R^n");
  if (k < 0 || k >= n) throw InvalidArgument("check_cor_1_2: coordinate index out of range");
  const double harm = detail::max_laplacian_residual(map, false);
  if (harm > 1e-6) throw InvalidArgument("check_cor_1_2: map is not harmonic (Laplacian residual " + num(harm) + ")");

  VerificationReport rep;
  rep.check_name = "cor_1_2";
  rep.param("map", variant_name(map)).param("n", n).param("k", k + 1).param("p", p).param("r", r);
  rep.result("K_hat", khat.K_hat).param("K_samples", khat.sample_count).param("K_radius", khat.sample_radius);
  if (!std::isfinite(khat.K_hat)) {
    rep.rows.push_back(inconclusive_row("K_hat infinite"));
    rep.note = "sampled dilatation is infinite";
    rep.finalize();
    return rep;
  }
  try {
    const SphereRule rule = default_sphere_rule(map);
    const MeanOptions mo = mean_options(map, opt);
    const Estimate mf = integral_mean(map, r, p, rule, Selection::whole(), mo);
    const Estimate mk = integral_mean(map, r, p, rule, Selection::coordinate(k), mo);
    const Eigen::VectorXd f0 = eval(map, Eigen::VectorXd::Zero(n));
    const double C = (1.0 + (n - 1.0) * khat.K_hat * khat.K_hat) / (p - 1.0);
    const double lhs = std::pow(mf.value, p);
    const double rhs = std::pow(f0.norm(), p) + C * (std::pow(mk.value, p) - std::pow(std::abs(f0(k)), p));
    const double err = detail::pow_err(mf.value, mf.err, p) + C * detail::pow_err(mk.value, mk.err, p);
    rep.rows.push_back(make_row("r=" + num(r), lhs, rhs, err, Policy::downgrade));
  } catch (const ConvergenceFailure& e) {
    rep.rows.push_back(inconclusive_row("r=" + num(r), e.error_estimate()));
    rep.note = "quadrature did not converge";
  }
  rep.finalize();
  return rep;
}

inline VerificationReport check_cor_1_2(const MapSpec& map, int k, double p, double r, const CheckOptions& opt = {}) {
  return check_cor_1_2(map, k, p, r, empirical_dilatation(map, opt.dilatation_samples, opt.dilatation_radius), opt);
}

/// Hardy-norm bound for an invariant harmonic K-quasiregular map, norms taken
/// as grid suprema of the integral means:
///   ||f||_p^p <= |f(0)|^p + ((1 + (n-1)K^2)/(p-1)) (||f_j||_p^p - |f_j(0)|^p).
/// One report per exponent; the exponents share node evaluations.
inline std::vector<VerificationReport> check_thm_1_3_B1(const MapSpec& map, int j, const std::vector<double>& ps,
                                                        const std::vector<double>& r_grid,
                                                        const EmpiricalDilatation& khat, const CheckOptions& opt = {}) {
  for (double p : ps)
    if (!(p > 1.0 && p <= 2.0)) throw InvalidArgument("check_thm_1_3_B1: p must lie in (1, 2]");
  const int n = domain_dim(map);
  if (codomain_dim(map) != n) throw InvalidArgument("check_thm_1_3_B1: map must send B^n into R^n");
  if (j < 0 || j >= n) throw InvalidArgument("check_thm_1_3_B1: coordinate index out of range");
  const double harm = detail::max_laplacian_residual(map, true);
  if (harm > 1e-6)
    throw InvalidArgument("check_thm_1_3_B1: map is not invariant harmonic (residual " + num(harm) + ")");

  std::vector<VerificationReport> out(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    auto& rep = out[i];
    rep.check_name = "thm_1_3";
    rep.param("map", variant_name(map)).param("n", n).param("j", j + 1).param("p", ps[i]);
    rep.param("r_grid", num_list(r_grid)).param("K_samples", khat.sample_count).result("K_hat", khat.K_hat);
  }
  auto inconclusive = [&](const std::string& label, double err, const std::string& note) {
    for (auto& rep : out) {
      rep.rows.push_back(inconclusive_row(label, err));
      rep.note = note;
      rep.finalize();
    }
    return out;
  };
  if (!std::isfinite(khat.K_hat)) return inconclusive("K_hat infinite", std::numeric_limits<double>::quiet_NaN(),
                                                       "sampled dilatation is infinite");
  try {
    const SphereRule rule = default_sphere_rule(map);
    const MeanOptions mo = mean_options(map, opt);
    const auto nf = hardy_norms(map, ps, r_grid, rule, Selection::whole(), mo);
    const auto nj = hardy_norms(map, ps, r_grid, rule, Selection::coordinate(j), mo);
    const Eigen::VectorXd f0 = eval(map, Eigen::VectorXd::Zero(n));
    const double C0 = 1.0 + (n - 1.0) * khat.K_hat * khat.K_hat;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const double p = ps[i];
      const double C = C0 / (p - 1.0);
      const double lhs = std::pow(nf[i].sup, p);
      const double rhs = std::pow(f0.norm(), p) + C * (std::pow(nj[i].sup, p) - std::pow(std::abs(f0(j)), p));
      const double err = detail::pow_err(nf[i].sup, nf[i].err, p) + C * detail::pow_err(nj[i].sup, nj[i].err, p);
      out[i].rows.push_back(make_row("norms", lhs, rhs, err, Policy::downgrade));
      out[i].result("norm_f", nf[i].sup).result("norm_f_j", nj[i].sup);
      out[i].finalize();
    }
  } catch (const ConvergenceFailure& e) {
    return inconclusive("norms", e.error_estimate(), "quadrature did not converge");
  }
  return out;
}

inline VerificationReport check_thm_1_3_B1(const MapSpec& map, int j, double p, const std::vector<double>& r_grid,
                                           const CheckOptions& opt = {}) {
  return check_thm_1_3_B1(map, j, std::vector<double>{p}, r_grid,
                          empirical_dilatation(map, opt.dilatation_samples, opt.dilatation_radius), opt)[0];
}

/// Conjugate bound for f = u + iv pluriharmonic on the ball of C^n with
/// v(0) = 0 and ||omega_f|| <= kappa:
///   kappa = 0: M_p(r,v) <= sqrt(n) cot(pi/(2p*)) M_p(r,u);
///   kappa > 0, p in (1,2]: M_p^p(r,v) <= 2n(1+kappa^2)/((p-1)(1-kappa)^2) M_p^p(r,u).
inline VerificationReport check_thm_1_5(const MapSpec& map, double p, const std::vector<double>& r_grid, double kappa,
                                        const CheckOptions& opt = {}) {
  const int n = complex_dim(map);
  if (n == 0) throw InvalidArgument("check_thm_1_5: map has no complex structure");
  if (!(p > 1.0)) throw InvalidArgument("check_thm_1_5: p must exceed 1");
  if (!(kappa >= 0.0 && kappa < 1.0)) throw InvalidArgument("check_thm_1_5: kappa must lie in [0, 1)");
  if (kappa > 0.0 && p > 2.0) throw InvalidArgument("check_thm_1_5: the explicit kappa > 0 bound needs p in (1, 2]");
  const Eigen::VectorXd f0 = eval(map, Eigen::VectorXd::Zero(2 * n));
  for (int k = 0; k < n; ++k)
    if (std::abs(f0(2 * k + 1)) > 1e-12) throw InvalidArgument("check_thm_1_5: Im f(0) must vanish");

  VerificationReport rep;
  rep.check_name = "thm_1_5";
  rep.param("map", variant_name(map)).param("n", n).param("p", p).param("kappa", kappa);
  rep.param("r_grid", num_list(r_grid));

  double omega_sup = 0.0;
  try {
    for (const auto& x : interior_sample(2 * n, 100, opt.dilatation_radius))
      omega_sup = std::max(omega_sup, second_dilatation(map, x).norm);
  } catch (const SingularDerivative&) {
    rep.result("omega_sup", "undefined");
    rep.rows.push_back(inconclusive_row("Df singular"));
    rep.note = "Df is singular at a sample point";
    rep.finalize();
    return rep;
  }
  rep.result("omega_sup", omega_sup);
  if (omega_sup > kappa + 1e-9)
    throw InvalidArgument("check_thm_1_5: sampled ||omega_f|| = " + num(omega_sup) + " exceeds kappa");

  const bool power_form = kappa > 0.0;
  const double C = power_form ? pluriharmonic_power_constant(n, kappa, p) : std::sqrt(n) * riesz_constant(p);
  rep.result("constant", C);
  const SphereRule rule = default_sphere_rule(map);
  MeanOptions mo;
  mo.tol = n > 1 ? opt.vector_mean_tol : opt.mean_tol;
  for (double r : r_grid) {
    try {
      const Estimate mu = integral_mean(map, r, p, rule, Selection::real_parts(), mo);
      const Estimate mv = integral_mean(map, r, p, rule, Selection::imag_parts(), mo);
      if (power_form) {
        rep.rows.push_back(make_row("r=" + num(r), std::pow(mv.value, p), C * std::pow(mu.value, p),
                                    detail::pow_err(mv.value, mv.err, p) + C * detail::pow_err(mu.value, mu.err, p)));
      } else {
        rep.rows.push_back(make_row("r=" + num(r), mv.value, C * mu.value, mv.err + C * mu.err));
      }
    } catch (const ConvergenceFailure& e) {
      rep.rows.push_back(inconclusive_row("r=" + num(r), e.error_estimate()));
      rep.note = "quadrature did not converge at some radius";
    }
  }
  rep.finalize();
  return rep;
}

/// Sharpness example of order K:
///   (a) M_1(r, f_1) = 2K/(K+1) within 1e-4 on the grid;
///   (b) M_1(r, f) strictly increasing, M_1(0.999, f) / M_1(0.9, f) >= 2,
///       slope >= 0.2 and R^2 > 0.99 for the fit against log(1/(1-r)) on the
///       last four grid radii;
///   (c) local dilatation <= K at the probe points.
inline VerificationReport sharpness_probe(double K, const std::vector<double>& r_grid, const CheckOptions& opt = {}) {
  const MapSpec map = sharpness_example(K);
  VerificationReport rep;
  rep.check_name = "sharpness";
  rep.param("K", K).param("r_grid", num_list(r_grid));
  const double target = 2.0 * K / (K + 1.0);
  const SphereRule rule = sphere_rule(2, 1);
  MeanOptions mo;
  mo.tol = opt.mean_tol;
  try {
    for (double r : r_grid) {
      const Estimate e = integral_mean(map, r, 1.0, rule, Selection::coordinate(0), mo);
      rep.rows.push_back(make_row("f1 mean r=" + num(r), std::abs(e.value - target), 1e-4, e.err));
    }
    std::vector<double> radii = r_grid;
    for (double extra : {0.9, 0.999})
      if (std::find(radii.begin(), radii.end(), extra) == radii.end()) radii.push_back(extra);
    std::sort(radii.begin(), radii.end());
    std::vector<Estimate> means;
    for (double r : radii) means.push_back(integral_mean(map, r, 1.0, rule, Selection::whole(), mo));
    auto at = [&](double r) { return means[std::find(radii.begin(), radii.end(), r) - radii.begin()]; };

    double min_step = std::numeric_limits<double>::infinity();
    double step_err = 0.0;
    for (std::size_t i = 1; i < means.size(); ++i) {
      const double step = means[i].value - means[i - 1].value;
      if (step < min_step) {
        min_step = step;
        step_err = means[i].err + means[i - 1].err;
      }
    }
    rep.rows.push_back(make_row("f mean increasing", 0.0, min_step, step_err, Policy::strict, false));
    const Estimate hi = at(0.999), lo = at(0.9);
    const double ratio = hi.value / lo.value;
    rep.rows.push_back(make_row("f mean ratio 0.999/0.9", 2.0, ratio, ratio * (hi.err / hi.value + lo.err / lo.value)));

    std::vector<double> tail_r(radii.end() - 4, radii.end());
    std::vector<double> tail_v;
    for (std::size_t i = means.size() - 4; i < means.size(); ++i) tail_v.push_back(means[i].value);
    const LogFit fit = log_growth_fit(tail_r, tail_v);
    rep.rows.push_back(make_row("log-growth slope", 0.2, fit.slope, 0.0));
    rep.rows.push_back(make_row("log-growth R^2", 0.99, fit.r_squared, 0.0));
    rep.result("ratio", ratio).result("slope", fit.slope).result("r_squared", fit.r_squared);
  } catch (const ConvergenceFailure& e) {
    rep.rows.push_back(inconclusive_row("means", e.error_estimate()));
    rep.note = "quadrature did not converge";
  }

  double kmax = 0.0;
  std::vector<Eigen::VectorXd> probes = interior_sample(2, 100, 0.95);
  for (double r : r_grid)
    for (int a = 0; a < 8; ++a) {
      Eigen::VectorXd x(2);
      x << r * std::cos(2.0 * std::numbers::pi * (a + 0.5) / 8.0), r * std::sin(2.0 * std::numbers::pi * (a + 0.5) / 8.0);
      probes.push_back(x);
    }
  for (const auto& x : probes) kmax = std::max(kmax, local_dilatation(map, x).local_K);
  rep.rows.push_back(make_row("local dilatation", kmax, K, 0.0));
  rep.result("K_max_sampled", kmax);
  rep.finalize();
  return rep;
}

namespace detail {

// Fourth-order Laplacian of a scalar function by Richardson-extrapolated central differences.
template <class F>
double fd_laplacian(F&& f, const Eigen::VectorXd& x, double h = 1e-3) {
  auto lap = [&](double s) {
    double acc = 0.0;
    const double c = f(x);
    Eigen::VectorXd y = x;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      y(j) = x(j) + s;
      const double up = f(y);
      y(j) = x(j) - s;
      const double dn = f(y);
      y(j) = x(j);
      acc += (up - 2.0 * c + dn) / (s * s);
    }
    return acc;
  };
  return (4.0 * lap(0.5 * h) - lap(h)) / 3.0;
}

}  // namespace detail

/// Heinz class membership on a sample: sum f_j Lap f_j >= -1e-9 everywhere;
/// the sampled sup of the Heinz ratio is reported; for harmonic maps the
/// identity Lap(f_j^2) = 2 |grad f_j|^2 is checked against a finite-difference
/// Laplacian of f_j^2.
inline VerificationReport check_heinz_class(const MapSpec& map, const std::vector<Eigen::VectorXd>& sample) {
  VerificationReport rep;
  rep.check_name = "heinz";
  rep.param("map", variant_name(map)).param("samples", static_cast<int>(sample.size()));
  double min_product = std::numeric_limits<double>::infinity();
  double a_hat = 0.0;
  int indeterminate = 0;
  bool harmonic = true;
  double identity_dev = 0.0;
  for (const auto& x : sample) {
    const JetData j = jet(map, x);
    const HeinzRatio h = heinz_ratio(j);
    min_product = std::min(min_product, h.product_sum);
    if (h.indeterminate) {
      ++indeterminate;
    } else {
      a_hat = std::max(a_hat, h.ratio);
    }
    const double scale = std::max({1.0, j.value.norm(), j.jacobian_real.norm()});
    if (j.laplacians.size() > 0 && j.laplacians.cwiseAbs().maxCoeff() > 1e-8 * scale) harmonic = false;
    if (!harmonic) continue;
    for (Eigen::Index c = 0; c < j.value.size(); ++c) {
      const double fd = detail::fd_laplacian([&](const Eigen::VectorXd& y) { return std::pow(eval(map, y)(c), 2); }, x);
      const double exact = 2.0 * j.jacobian_real.row(c).squaredNorm();
      identity_dev = std::max(identity_dev, std::abs(fd - exact) / std::max(1.0, exact));
    }
  }
  rep.result("a_hat", a_hat).result("indeterminate_points", indeterminate).result("harmonic", harmonic ? "yes" : "no");
  rep.rows.push_back(make_row("sum f_j Lap f_j >= 0", -min_product, 1e-9, 0.0, Policy::strict, false));
  if (harmonic) rep.rows.push_back(make_row("Lap f_j^2 = 2|grad f_j|^2", identity_dev, 1e-5, 0.0));
  rep.finalize();
  return rep;
}

/// Planar bridge on one map: sampled K_hat vs sampled kappa_hat = sup |g'/h'|.
inline std::vector<ReportRow> planar_bridge_rows(const MapSpec& map, const std::string& tag, int samples = 500) {
  const auto& ph = std::get<PlanarHarmonic>(map);
  double k_hat = 1.0;
  double kappa_hat = 0.0;
  for (const auto& x : interior_sample(2, samples, 0.95)) {
    Eigen::VectorXcd z(1);
    z(0) = cplx(x(0), x(1));
    const cplx hp = ph.h.derivative(z)(0, 0);
    const cplx gp = ph.g.derivative(z)(0, 0);
    kappa_hat = std::max(kappa_hat, std::abs(gp / hp));
    k_hat = std::max(k_hat, local_dilatation(map, x).local_K);
  }
  return {make_row(tag + " K_hat <= (1+kappa)/(1-kappa)", k_hat, (1.0 + kappa_hat) / (1.0 - kappa_hat) + 1e-8, 0.0,
                   Policy::strict, false),
          make_row(tag + " kappa_hat <= (K-1)/(K+1)", kappa_hat, (k_hat - 1.0) / (k_hat + 1.0) + 1e-8, 0.0,
                   Policy::strict, false)};
}

/// Theorem M on a holomorphic map: wu <= K^{1-1/n} (1 + 1e-6) pointwise.
inline ReportRow wu_dilatation_row(const MapSpec& map, const std::string& tag, int samples = 50) {
  const int n = complex_dim(map);
  double worst = 0.0;
  for (const auto& x : interior_sample(2 * n, samples, 0.95)) {
    const DilatationSample d = local_dilatation(map, x);
    const WuRatio w = wu_ratio(map, x);
    if (d.singular || w.degenerate) continue;
    worst = std::max(worst, w.ratio / std::pow(d.local_K, 1.0 - 1.0 / n));
  }
  return make_row(tag + " wu / K^(1-1/n)", worst, 1.0 + 1e-6, 0.0, Policy::strict, false);
}

/// Composite check: planar kappa <-> K bridge, the shear counterexample, and
/// the Wu inequality for holomorphic quasiregular maps.
inline VerificationReport check_prop_1_1(std::uint64_t seed = default_seed, double shear_kappa = 0.5) {
  VerificationReport rep;
  rep.check_name = "prop_1_1";
  rep.param("seed", std::to_string(seed)).param("shear_kappa", shear_kappa);
  std::mt19937_64 rng(seed);

  for (int i = 0; i < 10; ++i) {
    const auto member = random_planar_qr(rng, detail::uniform(rng, 0.1, 0.8));
    for (auto& row : planar_bridge_rows(member.map, "planar#" + std::to_string(i))) rep.rows.push_back(row);
  }
  for (double kappa : {0.2, 0.5}) {
    const MapSpec lin = planar_harmonic({0.0, 1.0}, {0.0, kappa});
    const double exact = (1.0 + kappa) / (1.0 - kappa);
    double dev = 0.0;
    for (const auto& x : interior_sample(2, 50, 0.95)) dev = std::max(dev, std::abs(local_dilatation(lin, x).local_K - exact));
    rep.rows.push_back(make_row("linear kappa=" + num(kappa) + " |K - (1+kappa)/(1-kappa)|", dev, 1e-12 * exact, 0.0,
                                Policy::strict, false));
  }

  const MapSpec shear = shear_counterexample(shear_kappa);
  double omega_dev = 0.0;
  double det_dev = 0.0;
  for (const auto& x : interior_sample(4, 10, 0.95)) {
    const SecondDilatation w = second_dilatation(shear, x);
    omega_dev = std::max(omega_dev, (w.omega - shear_kappa * Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff());
    const Eigen::MatrixXcd dh = jet(shear, x).Df;
    det_dev = std::max(det_dev, std::abs(dh(0, 0) * dh(1, 1) - dh(0, 1) * dh(1, 0) - 1.0));
  }
  rep.rows.push_back(make_row("shear omega = kappa I", omega_dev, 1e-10, 0.0, Policy::strict, false));
  rep.rows.push_back(make_row("shear det Dh = 1", det_dev, 0.0, 0.0, Policy::strict, false));
  std::vector<double> wu;
  for (double z1 : {0.0, 0.9, 0.99}) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(4);
    x(0) = z1;
    wu.push_back(wu_ratio(shear, x).ratio);
  }
  rep.result("wu_0", wu[0]).result("wu_0.9", wu[1]).result("wu_0.99", wu[2]);
  rep.rows.push_back(make_row("shear wu(0) golden ratio", std::abs(wu[0] - std::numbers::phi), 1e-12, 0.0,
                              Policy::strict, false));
  rep.rows.push_back(make_row("shear wu(0.9) >= 100", 100.0, wu[1], 0.0, Policy::strict, false));
  rep.rows.push_back(make_row("shear wu(0.99) >= 9.9e3", 9.9e3, wu[2], 0.0, Policy::strict, false));
  rep.rows.push_back(make_row("shear wu increasing", 0.0, std::min(wu[1] - wu[0], wu[2] - wu[1]), 0.0,
                              Policy::strict, false));

  for (int i = 0; i < 10; ++i) {
    const MapSpec f = disk_analytic(random_disk_polynomial(rng));
    rep.rows.push_back(wu_dilatation_row(f, "disk#" + std::to_string(i)));
  }
  for (int i = 0; i < 10; ++i) {
    const auto member = random_pluriharmonic(rng, 2, 0.0);
    rep.rows.push_back(wu_dilatation_row(member.map, "ball#" + std::to_string(i)));
  }
  rep.rows.push_back(wu_dilatation_row(shear_counterexample(0.0), "shear h"));
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------
// Property checks

/// ||A||^2 <= ||A||_F^2 <= n ||A||^2 on random real and complex matrices, n the column count.
inline VerificationReport check_frobenius_sandwich(std::uint64_t seed = default_seed, int count = 1000) {
  VerificationReport rep;
  rep.check_name = "frobenius_sandwich";
  rep.param("seed", std::to_string(seed)).param("count", count);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  double worst_low = -std::numeric_limits<double>::infinity();
  double worst_high = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < count; ++i) {
    const int n = detail::uniform_int(rng, 2, 6);
    double op = 0.0, fro = 0.0;
    if (i % 2 == 0) {
      Eigen::MatrixXd a(n, n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) a(r, c) = g(rng);
      op = op_norm(a);
      fro = frob_norm(a);
    } else {
      Eigen::MatrixXcd a(n, n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) a(r, c) = cplx(g(rng), g(rng));
      op = op_norm(a);
      fro = frob_norm(a);
    }
    worst_low = std::max(worst_low, (op * op - fro * fro) / (fro * fro));
    worst_high = std::max(worst_high, (fro * fro - n * op * op) / (fro * fro));
  }
  rep.rows.push_back(make_row("||A||^2 <= ||A||_F^2 (relative)", worst_low, 0.0, 1e-13, Policy::strict, false));
  rep.rows.push_back(make_row("||A||_F^2 <= n||A||^2 (relative)", worst_high, 0.0, 1e-13, Policy::strict, false));
  rep.finalize();
  return rep;
}

/// (sum |a_k|)^p <= sum |a_k|^p for p < 1 and <= n^{p-1} sum |a_k|^p for p >= 1.
inline VerificationReport check_power_mean(std::uint64_t seed = default_seed, int count = 1000,
                                           const std::vector<double>& ps = {0.5, 1.0, 2.0, 3.7}) {
  VerificationReport rep;
  rep.check_name = "power_mean";
  rep.param("seed", std::to_string(seed)).param("count", count).param("p", num_list(ps));
  std::mt19937_64 rng(seed);
  std::vector<std::vector<cplx>> vectors(count);
  for (auto& v : vectors) {
    v.resize(detail::uniform_int(rng, 1, 8));
    for (auto& a : v) a = detail::uniform_disk(rng) * detail::uniform(rng, 0.0, 10.0);
  }
  for (double p : ps) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& v : vectors) {
      double s = 0.0, sp = 0.0;
      for (const auto& a : v) {
        s += std::abs(a);
        sp += std::pow(std::abs(a), p);
      }
      const double n = static_cast<double>(v.size());
      const double lhs = std::pow(s, p);
      const double rhs = p < 1.0 ? sp : std::pow(n, p - 1.0) * sp;
      if (rhs > 0.0) worst = std::max(worst, (lhs - rhs) / rhs);
    }
    rep.rows.push_back(make_row("p=" + num(p) + " relative excess", worst, 0.0, 1e-13, Policy::strict, false));
  }
  rep.finalize();
  return rep;
}

/// Conjugating twice returns -(u - u(0)) coefficient by coefficient.
inline VerificationReport check_conjugation_involution(std::uint64_t seed = default_seed, int count = 100) {
  VerificationReport rep;
  rep.check_name = "conjugation_involution";
  rep.param("seed", std::to_string(seed)).param("count", count);
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const TrigSeries u = real_part_series(random_disk_polynomial(rng));
    const TrigSeries w = conjugate_disk(conjugate_disk(u));
    worst = std::max(worst, std::abs(w.a0));
    for (std::size_t k = 0; k < u.a.size(); ++k) {
      worst = std::max(worst, std::abs(w.a[k] + u.a[k]));
      worst = std::max(worst, std::abs(w.b[k] + u.b[k]));
    }
  }
  rep.rows.push_back(make_row("max coefficient deviation", worst, 0.0, 0.0, Policy::strict, false));
  rep.finalize();
  return rep;
}

/// The sampled non-tangential maximum is nondecreasing in the aperture.
inline VerificationReport check_nontangential_monotone(const MapSpec& map, const Eigen::VectorXd& zeta,
                                                       const std::vector<double>& alphas = {1.5, 2.0, 3.0, 5.0, 8.0},
                                                       int depth_levels = 12) {
  VerificationReport rep;
  rep.check_name = "nontangential_monotone";
  rep.param("map", variant_name(map)).param("alphas", num_list(alphas)).param("depth_levels", depth_levels);
  double prev = -std::numeric_limits<double>::infinity();
  for (double a : alphas) {
    const double v = nontangential_max(map, zeta, a, depth_levels).value;
    if (std::isfinite(prev)) rep.rows.push_back(make_row("alpha=" + num(a), prev, v, 0.0, Policy::strict, false));
    prev = v;
  }
  rep.finalize();
  return rep;
}

/// Boundedness consistency for p > 2: if the grid means of f_k stay bounded,
/// so do those of f. The ratio (||f||^2 - |f(0)|^2) / ||f_k||^2 is reported as
/// the implied constant.
inline VerificationReport check_boundedness(const MapSpec& map, int k, double p, const std::vector<double>& r_grid,
                                            const CheckOptions& opt = {}) {
  VerificationReport rep;
  rep.check_name = "boundedness_consistency";
  rep.param("map", variant_name(map)).param("k", k + 1).param("p", p).param("r_grid", num_list(r_grid));
  const SphereRule rule = default_sphere_rule(map);
  try {
    const HardyNorm nf = hardy_norm(map, p, r_grid, rule, Selection::whole(), mean_options(map, opt));
    const HardyNorm nk = hardy_norm(map, p, r_grid, rule, Selection::coordinate(k), mean_options(map, opt));
    const double f0 = eval(map, Eigen::VectorXd::Zero(domain_dim(map))).norm();
    const double implied = nk.sup > 0.0 ? (nf.sup * nf.sup - f0 * f0) / (nk.sup * nk.sup)
                                        : std::numeric_limits<double>::infinity();
    rep.result("coordinate_diverges", nk.diverges ? "yes" : "no").result("map_diverges", nf.diverges ? "yes" : "no");
    rep.result("implied_constant", implied);
    const bool consistent = nk.diverges || !nf.diverges;
    rep.rows.push_back(make_row("bounded coordinate implies bounded map", consistent ? 0.0 : 1.0, 0.0, 0.0,
                                Policy::strict, false));
  } catch (const ConvergenceFailure& e) {
    rep.rows.push_back(inconclusive_row("means", e.error_estimate()));
  }
  rep.finalize();
  return rep;
}

inline VerificationReport check_green_euclidean(const MapSpec& map, double r, double p, double mu = 1e6,
                                                double tol = 1e-5) {
  VerificationReport rep;
  rep.check_name = "green_euclidean";
  rep.param("map", variant_name(map)).param("r", r).param("p", p).param("mu", mu);
  try {
    const GreenIdentity g = hardy_stein_residual(map, r, p, mu);
    rep.result("sphere_side", g.lhs).result("ball_side", g.rhs);
    rep.rows.push_back(make_row("residual", g.residual, tol, 0.0, Policy::strict, false));
    rep.note = "quadrature err " + num(g.err);
  } catch (const ConvergenceFailure& e) {
    rep.rows.push_back(inconclusive_row("residual", e.error_estimate()));
  }
  rep.finalize();
  return rep;
}

inline VerificationReport check_green_invariant(const MapSpec& map, double r, double tol = 1e-4) {
  VerificationReport rep;
  rep.check_name = "green_invariant";
  rep.param("map", variant_name(map)).param("r", r);
  try {
    const GreenIdentity g = invariant_green_residual(map, r);
    rep.result("sphere_side", g.lhs).result("ball_side", g.rhs);
    rep.rows.push_back(make_row("residual", g.residual, tol, 0.0, Policy::strict, false));
    rep.note = "quadrature err " + num(g.err);
  } catch (const ConvergenceFailure& e) {
    rep.rows.push_back(inconclusive_row("residual", e.error_estimate()));
  }
  rep.finalize();
  return rep;
}

// ---------------------------------------------------------------------------
// Suites

struct SuiteParams {
  std::uint64_t seed = default_seed;
  std::vector<double> p;      // empty: suite default
  std::vector<double> r;      // empty: suite default
  std::vector<double> K;      // sharpness / cor_1_2 examples
  std::vector<double> kappa;  // thm_1_5
  int family_size = 0;        // 0: suite default
};

namespace detail {

inline std::vector<double> or_default(const std::vector<double>& v, std::vector<double> d) { return v.empty() ? d : v; }

inline void tag(VerificationReport& rep, const std::string& subject) { rep.params.insert(rep.params.begin(), {"subject", subject}); }

}  // namespace detail

inline std::vector<VerificationReport> suite_riesz_planar(const SuiteParams& sp) {
  const auto ps = detail::or_default(sp.p, {1.2, 1.5, 2.0, 3.0, 5.0});
  const auto rs = detail::or_default(sp.r, default_r_grid());
  const int count = sp.family_size > 0 ? sp.family_size : 20;
  std::vector<VerificationReport> out;

  // Symmetric case u = Re z, p = 2: the bound is attained.
  TrigSeries rez;
  rez.a = {1.0};
  rez.b = {0.0};
  {
    VerificationReport rep;
    rep.check_name = "riesz_near_extremal";
    rep.param("subject", "Re z").param("p", 2.0).param("r_grid", num_list(rs));
    const MapSpec F = disk_analytic(analytic_coefficients(rez));
    const SphereRule rule = sphere_rule(2, 1);
    for (double r : rs) {
      const Estimate mu = integral_mean(F, r, 2.0, rule, Selection::real_parts());
      const Estimate mv = integral_mean(F, r, 2.0, rule, Selection::imag_parts());
      const double ratio = mv.value / (riesz_constant(2.0) * mu.value);
      rep.rows.push_back(make_row("ratio r=" + num(r), 0.999, ratio, mv.err / mu.value + ratio * mu.err / mu.value));
    }
    rep.finalize();
    out.push_back(rep);
  }
  TrigSeries one;
  one.a0 = 1.0;
  for (double p : ps) {
    out.push_back(check_riesz_planar(rez, p, rs));
    detail::tag(out.back(), "Re z");
    out.push_back(check_riesz_planar(one, p, rs));
    detail::tag(out.back(), "constant 1");
  }
  std::mt19937_64 rng(sp.seed);
  for (int i = 0; i < count; ++i) {
    const TrigSeries u = real_part_series(random_disk_polynomial(rng));
    for (double p : ps) {
      out.push_back(check_riesz_planar(u, p, rs));
      detail::tag(out.back(), "random#" + std::to_string(i));
    }
  }
  return out;
}

inline std::vector<VerificationReport> suite_cor_1_2(const SuiteParams& sp) {
  const auto ps = detail::or_default(sp.p, {1.25, 1.5, 2.0});
  const auto rs = detail::or_default(sp.r, {0.5, 0.9, 0.99});
  const auto Ks = detail::or_default(sp.K, {1.0, 2.0, 5.0});
  const int count = sp.family_size > 0 ? sp.family_size : 10;
  for (double p : ps)
    if (!(p > 1.0 && p <= 2.0)) throw InvalidArgument("cor_1_2 suite: p must lie in (1, 2]");

  std::vector<std::pair<std::string, MapSpec>> maps;
  for (double K : Ks) maps.emplace_back("sharpness K=" + num(K), sharpness_example(K));
  maps.emplace_back("identity", real_polynomial_map(RealPolynomial::identity(2)));
  maps.emplace_back("h=z g=z^2/4", planar_harmonic({0.0, 1.0}, {0.0, 0.0, 0.25}));
  const auto planar = planar_family(sp.seed, count);
  for (std::size_t i = 0; i < planar.size(); ++i) maps.emplace_back("planar#" + std::to_string(i), planar[i].map);

  std::vector<VerificationReport> out;
  for (const auto& [name, map] : maps) {
    const EmpiricalDilatation khat = empirical_dilatation(map);
    for (double p : ps)
      for (double r : rs) {
        out.push_back(check_cor_1_2(map, 0, p, r, khat));
        detail::tag(out.back(), name);
      }
  }
  return out;
}

namespace detail {

// Boundary values on the unit circle of a planar harmonic polynomial map.
inline BoundaryData planar_boundary(const PlanarHarmonic& ph) {
  return boundary_from_closure(2, 2, [ph](const Eigen::VectorXd& zeta) {
    Eigen::VectorXcd z(1);
    z(0) = cplx(zeta(0), zeta(1));
    const cplx f = ph.h.value(z)(0) + std::conj(ph.g.value(z)(0));
    Eigen::VectorXd v(2);
    v << f.real(), f.imag();
    return v;
  });
}

}  // namespace detail

inline std::vector<VerificationReport> suite_thm_1_3(const SuiteParams& sp) {
  const auto ps = detail::or_default(sp.p, {1.5, 2.0});
  const auto rs = detail::or_default(sp.r, {0.5, 0.9, 0.99, 0.999});
  const int count = sp.family_size > 0 ? sp.family_size : 5;
  std::vector<VerificationReport> out;
  std::mt19937_64 rng(sp.seed);

  for (int i = 0; i < count; ++i) {
    const MapSpec map = random_invariant_extension(rng, 3);
    for (auto& rep : check_thm_1_3_B1(map, 0, ps, rs, empirical_dilatation(map))) {
      out.push_back(std::move(rep));
      detail::tag(out.back(), "extension n=3 #" + std::to_string(i));
    }
  }

  // Constant boundary data: both sides reduce to |f(0)|^p.
  {
    const MapSpec c = hyperbolic_poisson_extend(boundary_from_closure(3, 3, [](const Eigen::VectorXd&) {
      return Eigen::VectorXd::Constant(3, 0.5);
    }));
    VerificationReport rep;
    rep.check_name = "thm_1_3_constant";
    rep.param("subject", "constant boundary n=3");
    const double p = ps.front();
    const HardyNorm nf = hardy_norm(c, p, rs, default_sphere_rule(c), Selection::whole(), mean_options(c, {}));
    const double f0 = eval(c, Eigen::VectorXd::Zero(3)).norm();
    rep.rows.push_back(make_row("||f||^p = |f(0)|^p", std::abs(std::pow(nf.sup, p) - std::pow(f0, p)), 0.0,
                                detail::pow_err(nf.sup, nf.err, p) + 1e-10));
    rep.finalize();
    out.push_back(rep);
  }

  // n = 2: the hyperbolic and Euclidean kernels coincide, so the check must
  // agree with the corollary suite on the same planar maps.
  const auto planar = planar_family(sp.seed, 3);
  for (std::size_t i = 0; i < planar.size(); ++i) {
    const MapSpec ext = hyperbolic_poisson_extend(detail::planar_boundary(std::get<PlanarHarmonic>(planar[i].map)));
    const EmpiricalDilatation khat = empirical_dilatation(planar[i].map);
    const auto a = check_thm_1_3_B1(ext, 0, ps, rs, khat);
    for (std::size_t k = 0; k < ps.size(); ++k) {
      std::vector<VerificationReport> b;
      for (double r : {0.5, 0.9, 0.99}) b.push_back(check_cor_1_2(planar[i].map, 0, ps[k], r, khat));
      VerificationReport rep;
      rep.check_name = "thm_1_3_cross_check";
      rep.param("subject", "planar#" + std::to_string(i)).param("p", ps[k]);
      rep.result("thm_1_3", verdict_name(a[k].verdict)).result("cor_1_2", verdict_name(worst_verdict(b)));
      rep.rows.push_back(make_row("verdicts agree", a[k].verdict == worst_verdict(b) ? 0.0 : 1.0, 0.0, 0.0,
                                  Policy::strict, false));
      rep.rows.push_back(make_row("norm bound n=2", a[k].lhs, a[k].rhs, a[k].err));
      rep.finalize();
      out.push_back(rep);
    }
  }
  return out;
}

inline std::vector<VerificationReport> suite_thm_1_5(const SuiteParams& sp) {
  const auto ps = detail::or_default(sp.p, {1.5, 2.0, 3.0});
  const auto rs = detail::or_default(sp.r, default_r_grid());
  const auto kappas = detail::or_default(sp.kappa, {0.0, 0.5});
  const int count = sp.family_size > 0 ? sp.family_size : 10;
  std::vector<VerificationReport> out;
  std::mt19937_64 rng(sp.seed);
  for (double kappa : kappas)
    for (int n : {1, 2})
      for (int i = 0; i < count; ++i) {
        const auto member = random_pluriharmonic(rng, n, kappa);
        for (double p : ps) {
          if (kappa > 0.0 && p > 2.0) continue;
          out.push_back(check_thm_1_5(member.map, p, rs, kappa));
          detail::tag(out.back(), "n=" + std::to_string(n) + " #" + std::to_string(i));
        }
      }
  return out;
}

inline std::vector<VerificationReport> suite_sharpness(const SuiteParams& sp) {
  const auto Ks = detail::or_default(sp.K, {1.0, 3.0});
  const auto rs = detail::or_default(sp.r, default_r_grid());
  std::vector<VerificationReport> out;
  for (double K : Ks) out.push_back(sharpness_probe(K, rs));
  return out;
}

inline std::vector<VerificationReport> suite_prop_1_1(const SuiteParams& sp) {
  const auto kappas = detail::or_default(sp.kappa, {0.5});
  std::vector<VerificationReport> out;
  for (double kappa : kappas) out.push_back(check_prop_1_1(sp.seed, kappa));
  return out;
}

inline std::vector<VerificationReport> suite_heinz(const SuiteParams& sp) {
  std::vector<VerificationReport> out;
  std::mt19937_64 rng(sp.seed);
  std::vector<std::pair<std::string, MapSpec>> maps;
  maps.emplace_back("sharpness K=2", sharpness_example(2.0));
  maps.emplace_back("identity", real_polynomial_map(RealPolynomial::identity(2)));
  maps.emplace_back("(|x|^2, 0)",
                    real_polynomial_map(RealPolynomial(2, {RealPolynomial::radial_quadratic(2, 0.0, 1.0).terms()[0], {}})));
  maps.emplace_back("planar#0", random_planar_qr(rng, 0.4).map);
  maps.emplace_back("extension n=3", poisson_extend(boundary_from_polynomial(RealPolynomial::identity(3))));
  for (const auto& [name, map] : maps) {
    out.push_back(check_heinz_class(map, interior_sample(domain_dim(map), 50, 0.9)));
    detail::tag(out.back(), name);
  }
  return out;
}

inline std::vector<VerificationReport> suite_norms(const SuiteParams& sp) {
  std::vector<VerificationReport> out;
  out.push_back(check_frobenius_sandwich(sp.seed));
  out.push_back(check_conjugation_involution(sp.seed));
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(2);
  e1(0) = 1.0;
  out.push_back(check_nontangential_monotone(sharpness_example(2.0), e1));
  detail::tag(out.back(), "sharpness K=2 at e1");
  Eigen::VectorXd diag = Eigen::VectorXd::Constant(3, 1.0 / std::sqrt(3.0));
  out.push_back(check_nontangential_monotone(poisson_extend(boundary_from_polynomial(RealPolynomial::identity(3))), diag));
  detail::tag(out.back(), "P[identity] n=3");

  const double p = sp.p.empty() ? 3.0 : sp.p.front();
  const auto rs = detail::or_default(sp.r, default_r_grid());
  std::mt19937_64 rng(sp.seed);
  out.push_back(check_boundedness(real_polynomial_map(RealPolynomial::identity(2)), 0, p, rs));
  detail::tag(out.back(), "identity");
  for (int i = 0; i < 3; ++i) {
    out.push_back(check_boundedness(random_planar_qr(rng, detail::uniform(rng, 0.1, 0.6)).map, 0, p, rs));
    detail::tag(out.back(), "planar#" + std::to_string(i));
  }
  out.push_back(check_boundedness(random_invariant_extension(rng, 3), 0, p, rs));
  detail::tag(out.back(), "extension n=3");
  return out;
}

inline std::vector<VerificationReport> suite_power_mean(const SuiteParams& sp) {
  return {check_power_mean(sp.seed, 1000, detail::or_default(sp.p, {0.5, 1.0, 2.0, 3.7}))};
}

inline std::vector<VerificationReport> suite_green_identities(const SuiteParams& sp) {
  std::vector<VerificationReport> out;
  const auto ps = detail::or_default(sp.p, {1.5, 2.0, 3.0});
  const auto rs = detail::or_default(sp.r, {0.3, 0.7});
  out.push_back(check_green_euclidean(real_polynomial_map(RealPolynomial::identity(2)), 0.7, 2.0));
  detail::tag(out.back(), "identity");
  std::mt19937_64 rng(sp.seed);
  for (int i = 0; i < 5; ++i) {
    const MapSpec f = disk_analytic(random_disk_polynomial(rng));
    for (double p : ps)
      for (double r : rs) {
        out.push_back(check_green_euclidean(f, r, p));
        detail::tag(out.back(), "disk#" + std::to_string(i));
      }
  }
  RealPolynomial phi(3, {{{1.0, {1, 0, 0}}, {0.5, {0, 1, 1}}}, {{1.0, {0, 0, 1}}, {0.3, {2, 0, 0}}}});
  out.push_back(check_green_invariant(hyperbolic_poisson_extend(boundary_from_polynomial(phi)), 0.5));
  detail::tag(out.back(), "P_h[phi] n=3");
  return out;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"riesz_planar", "cor_1_2", "thm_1_3", "thm_1_5", "sharpness",
                                                 "prop_1_1",     "heinz",   "norms",   "power_mean", "green_identities"};
  return names;
}

inline std::vector<VerificationReport> run_suite(const std::string& name, const SuiteParams& sp) {
  if (name == "riesz_planar") return suite_riesz_planar(sp);
  if (name == "cor_1_2") return suite_cor_1_2(sp);
  if (name == "thm_1_3") return suite_thm_1_3(sp);
  if (name == "thm_1_5") return suite_thm_1_5(sp);
  if (name == "sharpness") return suite_sharpness(sp);
  if (name == "prop_1_1") return suite_prop_1_1(sp);
  if (name == "heinz") return suite_heinz(sp);
  if (name == "norms") return suite_norms(sp);
  if (name == "power_mean") return suite_power_mean(sp);
  if (name == "green_identities") return suite_green_identities(sp);
  throw InvalidArgument("unknown suite: " + name);
}

}  // namespace rieszlab
