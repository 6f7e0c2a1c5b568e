#pragma once

#include <stdexcept>
#include <string>

namespace sac {

enum class ErrorCode {
  UndeclaredTransition,
  SingularLocus,
  IndeterminacyProximity,
  DenominatorUnderflow,
  GuardViolation,
  BudgetExhausted,
  OrbitLeftRegion,
  NoValidRegion,
  RootFindingFailure,
  DegenerateTarget,
  BracketFailure,
  UndecidedMidpoint,
  NonSkewMap,
  OrderOverflow,
  PreimageEscapedRegion,
  ConeFilterFailure,
  CorrectorWindowExhausted,
  ExactModeUnsupported,
  BadConfig,
};

// Recoverable domain errors; the CLI maps these to exit code 1.
class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Usage / schema errors; the CLI maps these to exit code 2.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sac
