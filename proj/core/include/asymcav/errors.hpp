#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace asymcav {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Out-of-range or non-finite input. `field()` names the offending input
/// (a dotted config path when the value came from a config file).
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message);
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

enum class NumericFailure {
  kNoQuadraticPoint,
  kDivisionDegenerate,
  kUnsupportedPort,
  kUndrivableMode,
  kDegenerateLossless,
  kPhaseSlopeSingular,
  kSingularMatrix,
  kStepTooLarge,
  kTimescaleViolation,
  kFitDiverged,
  kNonFiniteObjective,
};

std::string_view to_string(NumericFailure kind);

/// A computation that is well-posed in general but not at the given point.
class NumericError : public Error {
 public:
  NumericError(NumericFailure kind, const std::string& message);
  NumericFailure kind() const noexcept { return kind_; }

 private:
  NumericFailure kind_;
};

}  // namespace asymcav
