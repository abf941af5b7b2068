#pragma once

#include <stdexcept>
#include <string>

namespace gll {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside the mathematical domain of the function.
struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(what) {}
};

// Element is not hyperbolic: |trace| <= 2, no translation length.
struct NotHyperbolic : Error {
  explicit NotHyperbolic(const std::string& what) : Error(what) {}
};

// A geometric construction failed its own residual checks.
struct ConstructionError : Error {
  explicit ConstructionError(const std::string& what) : Error(what) {}
};

// An enumeration or table grew past its configured budget.
struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

// Least-squares fit on degenerate or insufficient data.
struct FitError : Error {
  explicit FitError(const std::string& what) : Error(what) {}
};

// Domain reduction failed to converge.
struct NormalizationError : Error {
  explicit NormalizationError(const std::string& what) : Error(what) {}
};

// Flow step size rejected (nonpositive or too large for crossing detection).
struct StepSizeError : Error {
  explicit StepSizeError(const std::string& what) : Error(what) {}
};

// close_up called on a trajectory with no detected return.
struct NoReturn : Error {
  explicit NoReturn(const std::string& what) : Error(what) {}
};

// Accepted closing violates the closing estimate it was supposed to satisfy.
struct AnosovViolation : Error {
  explicit AnosovViolation(const std::string& what) : Error(what) {}
};

// Not enough data to run an experiment at the configured size.
struct InsufficientData : Error {
  explicit InsufficientData(const std::string& what) : Error(what) {}
};

// Cache file corrupt or checksum mismatch.
struct CacheError : Error {
  explicit CacheError(const std::string& what) : Error(what) {}
};

}  // namespace gll
