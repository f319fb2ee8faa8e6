#pragma once

#include <stdexcept>
#include <string>

namespace langevin {

// Bad inputs, unknown identifiers, contract violations by the caller.
// The CLI maps these to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failures detected while computing: quadrature non-convergence, unstable
// schemes, degenerate spectra, diverging trajectories. CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QuadratureError : public NumericalError {
 public:
  QuadratureError(const std::string& what, double achieved_rel_tol)
      : NumericalError(what), achieved_rel_tol_(achieved_rel_tol) {}
  double achieved_rel_tol() const { return achieved_rel_tol_; }

 private:
  double achieved_rel_tol_;
};

class EvaluationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Scheme spectral radius >= 1 at the requested step size.
class StabilityError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Equal eigenvalues: the closed-form covariance is undefined, use the
// Lyapunov solver instead.
class DegenerateSpectrumError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// The small-noise rate denominator is not positive definite (h too large).
class DegenerateRateError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double achieved_residual)
      : NumericalError(what), achieved_residual_(achieved_residual) {}
  double achieved_residual() const { return achieved_residual_; }

 private:
  double achieved_residual_;
};

class DivergenceError : public NumericalError {
 public:
  DivergenceError(const std::string& what, std::uint64_t step)
      : NumericalError(what), step_(step) {}
  std::uint64_t step() const { return step_; }

 private:
  std::uint64_t step_;
};

// Caller passed a value outside the documented domain (indefinite matrix,
// empty set, theta outside [1/2,1], ...).
class DomainError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// Every Monte Carlo grid value produced zero hits; the regression is empty.
class InsufficientResolutionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace langevin
