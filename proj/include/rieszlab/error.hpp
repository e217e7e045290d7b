#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rieszlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition on an argument was violated (dimension, radius, exponent...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A point lies outside the open ball where the map is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An integrand produced a non-finite value at a quadrature node.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& what, std::vector<double> node)
      : Error(what), node_(std::move(node)) {}
  const std::vector<double>& node() const noexcept { return node_; }

 private:
  std::vector<double> node_;
};

/// Two consecutive quadrature levels (or an adaptive rule) failed to agree
/// within the requested tolerance.
class ConvergenceFailure : public Error {
 public:
  ConvergenceFailure(const std::string& what, double best, double err)
      : Error(what), best_(best), err_(err) {}
  double best_estimate() const noexcept { return best_; }
  double error_estimate() const noexcept { return err_; }

 private:
  double best_;
  double err_;
};

/// The holomorphic derivative matrix Df is singular where it must be inverted.
class SingularDerivative : public Error {
 public:
  using Error::Error;
};

/// A finite-difference stencil would leave the ball or lose all precision.
class PrecisionLoss : public Error {
 public:
  using Error::Error;
};

}  // namespace rieszlab
