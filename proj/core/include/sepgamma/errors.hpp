#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sepgamma {

/// Failure categories surfaced by validating constructors and operations.
enum class ErrorCode {
  DimensionMismatch,
  NotSquare,
  NonFinite,
  NotHermitian,
  NotPositive,
  TraceNotOne,
  NotNormalized,
  InvalidParameter,
  InvalidDecomposition,
  SeedMismatch,
  CostTooHigh,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Input or contract violation. Carries a machine-readable code.
class Error : public std::invalid_argument {
 public:
  Error(ErrorCode code, const std::string& what,
        double value = std::numeric_limits<double>::quiet_NaN())
      : std::invalid_argument(what), code_(code), value_(value) {}

  ErrorCode code() const noexcept { return code_; }

  /// Offending quantity when one exists (minimum eigenvalue, trace, norm, cost).
  double value() const noexcept { return value_; }

 private:
  ErrorCode code_;
  double value_;
};

/// A numerical kernel produced a non-finite or otherwise unusable result.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sepgamma
