#pragma once

#include <stdexcept>
#include <string>

namespace ffgap {

// Failure classes. Each maps to one CLI exit code (see cli.hpp).

/// Bad input: malformed parameters, non-Hermitian or non-positive operators,
/// models that fail the frustration-free gate.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A spectrum could not be split cleanly into "zero" / "one" and the rest.
class NumericalAmbiguityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The bound cannot be issued because epsilon >= 1/2.
class InconclusiveError : public std::runtime_error {
 public:
  explicit InconclusiveError(const std::string& what, double epsilon)
      : std::runtime_error(what), m_epsilon(epsilon) {}
  double epsilon() const { return m_epsilon; }

 private:
  double m_epsilon;
};

/// An internal consistency check failed (cross-validation, operator
/// inequality, multiplicity assertion).
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative solver did not converge within its caps.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double worst_residual)
      : std::runtime_error(what), m_worst_residual(worst_residual) {}
  double worst_residual() const { return m_worst_residual; }

 private:
  double m_worst_residual;
};

}  // namespace ffgap
