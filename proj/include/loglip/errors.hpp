#pragma once

#include <stdexcept>
#include <string>

namespace loglip {

/// Malformed or inconsistent configuration (bad family parameters, schema
/// violations, empty spectra). The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its documented domain (e.g. eps >= 1/4).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Misaligned inputs that indicate a programming error rather than bad data.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Quadrature non-convergence, non-finite state, and similar numerical failures.
/// The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InstabilityError : public NumericalError {
 public:
  InstabilityError(const std::string& what, long step)
      : NumericalError(what + " (step " + std::to_string(step) + ")"), step_(step) {}
  long step() const noexcept { return step_; }

 private:
  long step_;
};

/// A verification whose preconditions do not hold (lambda <= 4, delta below
/// delta_min). Distinct from a failed check.
class InapplicableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// sobolev_weight at lambda = 0 under the homogeneous or graded convention.
class ZeroModeExcluded : public std::domain_error {
 public:
  ZeroModeExcluded() : std::domain_error("zero mode excluded from homogeneous/graded norm") {}
};

class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// |V(0)| = 0 makes an amplification ratio meaningless.
class UndefinedRatioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Zero right-hand side norms while the solution is nonzero.
class DegenerateDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace loglip
