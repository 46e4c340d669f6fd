#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nlsplit {

// Base class for every error raised by the solver library.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke a documented precondition (sizes, ranges, argument domains).
class ContractViolation : public SolverError {
 public:
  using SolverError::SolverError;
};

class DimensionMismatch : public ContractViolation {
 public:
  using ContractViolation::ContractViolation;
};

class DomainError : public ContractViolation {
 public:
  using ContractViolation::ContractViolation;
};

// A step could not be accepted. The adaptive loops react to this family by
// halving the step size and retrying.
class RejectedStep : public SolverError {
 public:
  using SolverError::SolverError;
};

// The requested step violates the configured CFL inequality.
class CflViolation : public RejectedStep {
 public:
  using RejectedStep::RejectedStep;
};

// A Thomas elimination hit a (near) zero pivot. Under the CFL condition the
// stage matrices are M-matrices, so this signals a step-size problem upstream.
class SingularStageError : public CflViolation {
 public:
  SingularStageError(std::size_t line, const std::string& what)
      : CflViolation(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// The advanced state has entries below the positivity tolerance, or is not finite.
class PositivityLoss : public RejectedStep {
 public:
  PositivityLoss(double min_value, const std::string& what)
      : RejectedStep(what), min_value_(min_value) {}
  double min_value() const noexcept { return min_value_; }

 private:
  double min_value_;
};

// The step size fell below the configured floor. Interpreted as finite-time blow-up.
class StepFloorReached : public SolverError {
 public:
  StepFloorReached(double t_estimate, const std::string& what)
      : SolverError(what), t_estimate_(t_estimate) {}
  double blowup_time_estimate() const noexcept { return t_estimate_; }

 private:
  double t_estimate_;
};

class DegenerateEstimate : public SolverError {
 public:
  using SolverError::SolverError;
};

class ConfigError : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace nlsplit
