#pragma once

#include <stdexcept>
#include <string>

namespace simpsonq {

/// Argument outside the mathematical domain of an operation (t ∉ [0,1], q < 1, M ≤ 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A user function returned a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, double point)
      : std::runtime_error(what + " at x = " + std::to_string(point)), point_(point) {}

  [[nodiscard]] double point() const noexcept { return point_; }

 private:
  double point_;
};

/// A numeric oracle (adaptive integrator) did not reach its tolerance.
class OracleFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Not enough information to form a bound (e.g. no fourth derivative and no supplied sup).
class InsufficientData : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed config or report document.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace simpsonq
