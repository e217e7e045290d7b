#pragma once

// Holomorphic polynomial maps C^n -> C^m and real polynomial maps R^n -> R^m
// with exact first derivatives (and Laplacians for the real case).

#include <algorithm>
#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rieszlab/error.hpp"

namespace rieszlab {

using cplx = std::complex<double>;

template <class T>
struct Monomial {
  T coef{};
  std::vector<int> powers;
};

namespace detail {

// table[j][e] = z_j^e for e <= max_power.
template <class T, class Vec>
std::vector<std::vector<T>> power_table(const Vec& z, int max_power) {
  std::vector<std::vector<T>> table(static_cast<std::size_t>(z.size()));
  for (Eigen::Index j = 0; j < z.size(); ++j) {
    auto& row = table[static_cast<std::size_t>(j)];
    row.resize(static_cast<std::size_t>(max_power) + 1);
    row[0] = T(1);
    for (int e = 1; e <= max_power; ++e) row[e] = row[e - 1] * z(j);
  }
  return table;
}

template <class T>
int max_power_of(const std::vector<std::vector<Monomial<T>>>& comps) {
  int m = 0;
  for (const auto& c : comps)
    for (const auto& t : c)
      for (int e : t.powers) m = std::max(m, e);
  return m;
}

template <class T>
void validate_terms(int vars, const std::vector<std::vector<Monomial<T>>>& comps) {
  if (vars < 1) throw InvalidArgument("polynomial: need at least one variable");
  for (const auto& c : comps)
    for (const auto& t : c) {
      if (static_cast<int>(t.powers.size()) != vars)
        throw InvalidArgument("polynomial: monomial exponent vector has wrong length");
      for (int e : t.powers)
        if (e < 0) throw InvalidArgument("polynomial: negative exponent");
    }
}

}  // namespace detail

/// Holomorphic polynomial map C^vars -> C^components.
class HolomorphicPolynomial {
 public:
  using Term = Monomial<cplx>;

  HolomorphicPolynomial() = default;
  HolomorphicPolynomial(int vars, std::vector<std::vector<Term>> components)
      : vars_(vars), comps_(std::move(components)) {
    detail::validate_terms(vars_, comps_);
    max_power_ = detail::max_power_of(comps_);
  }

  /// a_0 + a_1 z + ... + a_d z^d.
  static HolomorphicPolynomial univariate(const std::vector<cplx>& coeffs) {
    std::vector<Term> terms;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      if (coeffs[k] != cplx(0.0)) terms.push_back({coeffs[k], {static_cast<int>(k)}});
    return HolomorphicPolynomial(1, {terms});
  }

  static HolomorphicPolynomial identity(int n) {
    std::vector<std::vector<Term>> comps(n);
    for (int k = 0; k < n; ++k) {
      std::vector<int> pw(n, 0);
      pw[k] = 1;
      comps[k].push_back({cplx(1.0), pw});
    }
    return HolomorphicPolynomial(n, comps);
  }

  int vars() const noexcept { return vars_; }
  int components() const noexcept { return static_cast<int>(comps_.size()); }
  const std::vector<std::vector<Term>>& terms() const noexcept { return comps_; }

  Eigen::VectorXcd value(const Eigen::VectorXcd& z) const {
    const auto table = detail::power_table<cplx>(z, max_power_);
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(components());
    for (int k = 0; k < components(); ++k) {
      cplx s = 0.0;
      for (const auto& t : comps_[k]) {
        cplx m = t.coef;
        for (int j = 0; j < vars_; ++j) m *= table[j][t.powers[j]];
        s += m;
      }
      out(k) = s;
    }
    return out;
  }

  /// Complex derivative matrix (d f_k / d z_j).
  Eigen::MatrixXcd derivative(const Eigen::VectorXcd& z) const {
    const auto table = detail::power_table<cplx>(z, max_power_);
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(components(), vars_);
    for (int k = 0; k < components(); ++k) {
      for (const auto& t : comps_[k]) {
        for (int j = 0; j < vars_; ++j) {
          if (t.powers[j] == 0) continue;
          cplx m = t.coef * static_cast<double>(t.powers[j]);
          for (int i = 0; i < vars_; ++i) m *= table[i][i == j ? t.powers[i] - 1 : t.powers[i]];
          d(k, j) += m;
        }
      }
    }
    return d;
  }

  Eigen::VectorXcd at_origin() const { return value(Eigen::VectorXcd::Zero(vars_)); }

  HolomorphicPolynomial scaled(cplx c) const {
    auto comps = comps_;
    for (auto& comp : comps)
      for (auto& t : comp) t.coef *= c;
    return HolomorphicPolynomial(vars_, comps);
  }

  /// Adds a constant vector to the map.
  HolomorphicPolynomial shifted(const Eigen::VectorXcd& c) const {
    if (c.size() != components()) throw InvalidArgument("HolomorphicPolynomial::shifted: size mismatch");
    auto comps = comps_;
    for (int k = 0; k < components(); ++k)
      if (c(k) != cplx(0.0)) comps[k].push_back({c(k), std::vector<int>(vars_, 0)});
    return HolomorphicPolynomial(vars_, comps);
  }

  /// Left multiplication by a constant matrix: f -> A f.
  HolomorphicPolynomial transformed(const Eigen::MatrixXcd& a) const {
    if (a.cols() != components()) throw InvalidArgument("HolomorphicPolynomial::transformed: size mismatch");
    std::vector<std::vector<Term>> comps(static_cast<std::size_t>(a.rows()));
    for (Eigen::Index r = 0; r < a.rows(); ++r)
      for (int k = 0; k < components(); ++k) {
        if (a(r, k) == cplx(0.0)) continue;
        for (const auto& t : comps_[k]) comps[r].push_back({a(r, k) * t.coef, t.powers});
      }
    return HolomorphicPolynomial(vars_, comps);
  }

 private:
  int vars_ = 1;
  int max_power_ = 0;
  std::vector<std::vector<Term>> comps_;
};

/// Real polynomial map R^vars -> R^components with exact Jacobian and Laplacian.
class RealPolynomial {
 public:
  using Term = Monomial<double>;

  RealPolynomial() = default;
  RealPolynomial(int vars, std::vector<std::vector<Term>> components)
      : vars_(vars), comps_(std::move(components)) {
    detail::validate_terms(vars_, comps_);
    max_power_ = detail::max_power_of(comps_);
  }

  static RealPolynomial identity(int n) {
    std::vector<std::vector<Term>> comps(n);
    for (int k = 0; k < n; ++k) comps[k].push_back({1.0, unit_powers(n, k, 1)});
    return RealPolynomial(n, comps);
  }

  static RealPolynomial coordinate(int n, int k) {
    return RealPolynomial(n, {{Term{1.0, unit_powers(n, k, 1)}}});
  }

  /// c + s |x|^2 as a single component.
  static RealPolynomial radial_quadratic(int n, double c, double s) {
    std::vector<Term> terms;
    if (c != 0.0) terms.push_back({c, std::vector<int>(n, 0)});
    for (int k = 0; k < n; ++k) terms.push_back({s, unit_powers(n, k, 2)});
    return RealPolynomial(n, {terms});
  }

  int vars() const noexcept { return vars_; }
  int components() const noexcept { return static_cast<int>(comps_.size()); }
  const std::vector<std::vector<Term>>& terms() const noexcept { return comps_; }

  Eigen::VectorXd value(const Eigen::VectorXd& x) const {
    const auto table = detail::power_table<double>(x, max_power_);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(components());
    for (int k = 0; k < components(); ++k)
      for (const auto& t : comps_[k]) out(k) += monomial(table, t.coef, t.powers);
    return out;
  }

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const {
    const auto table = detail::power_table<double>(x, max_power_);
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(components(), vars_);
    for (int k = 0; k < components(); ++k)
      for (const auto& t : comps_[k])
        for (int j = 0; j < vars_; ++j) {
          if (t.powers[j] == 0) continue;
          auto pw = t.powers;
          pw[j] -= 1;
          d(k, j) += monomial(table, t.coef * t.powers[j], pw);
        }
    return d;
  }

  Eigen::VectorXd laplacian(const Eigen::VectorXd& x) const {
    const auto table = detail::power_table<double>(x, max_power_);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(components());
    for (int k = 0; k < components(); ++k)
      for (const auto& t : comps_[k])
        for (int j = 0; j < vars_; ++j) {
          if (t.powers[j] < 2) continue;
          auto pw = t.powers;
          pw[j] -= 2;
          out(k) += monomial(table, t.coef * t.powers[j] * (t.powers[j] - 1), pw);
        }
    return out;
  }

  RealPolynomial scaled(double c) const {
    auto comps = comps_;
    for (auto& comp : comps)
      for (auto& t : comp) t.coef *= c;
    return RealPolynomial(vars_, comps);
  }

 private:
  static std::vector<int> unit_powers(int n, int k, int e) {
    if (k < 0 || k >= n) throw InvalidArgument("RealPolynomial: coordinate index out of range");
    std::vector<int> pw(n, 0);
    pw[k] = e;
    return pw;
  }

  double monomial(const std::vector<std::vector<double>>& table, double c, const std::vector<int>& pw) const {
    for (int j = 0; j < vars_; ++j) c *= table[j][pw[j]];
    return c;
  }

  int vars_ = 1;
  int max_power_ = 0;
  std::vector<std::vector<Term>> comps_;
};

}  // namespace rieszlab
