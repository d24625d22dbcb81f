#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spectradim {

/// Malformed graph or table input. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class UnsupportedFormat : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Eigensolver refused the input or failed to converge.
class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Iterative solve hit its iteration cap. Carries the state at exit.
class ConvergenceError : public SolverError {
public:
  ConvergenceError(const std::string& what, std::size_t iterations, std::size_t converged,
                   double residual)
      : SolverError(what), iterations_(iterations), converged_(converged), residual_(residual) {}

  std::size_t iterations() const noexcept { return iterations_; }
  /// Number of leading Ritz pairs that met the tolerance.
  std::size_t converged() const noexcept { return converged_; }
  double residual() const noexcept { return residual_; }

private:
  std::size_t iterations_;
  std::size_t converged_;
  double residual_;
};

enum class EstimationFailure {
  insufficient_low_spectrum,
  non_monotone_fit,
  zero_eigenvalue_contamination,
};

class EstimationError : public std::runtime_error {
public:
  EstimationError(EstimationFailure kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  EstimationFailure kind() const noexcept { return kind_; }

private:
  EstimationFailure kind_;
};

}  // namespace spectradim
