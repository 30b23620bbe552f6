#include "asymcav/errors.hpp"

namespace asymcav {

ValidationError::ValidationError(std::string field, const std::string& message)
    : Error(field + ": " + message), field_(std::move(field)) {}

std::string_view to_string(NumericFailure kind) {
  switch (kind) {
    case NumericFailure::kNoQuadraticPoint: return "NoQuadraticPoint";
    case NumericFailure::kDivisionDegenerate: return "DivisionDegenerate";
    case NumericFailure::kUnsupportedPort: return "UnsupportedPort";
    case NumericFailure::kUndrivableMode: return "UndrivableMode";
    case NumericFailure::kDegenerateLossless: return "DegenerateLossless";
    case NumericFailure::kPhaseSlopeSingular: return "PhaseSlopeSingular";
    case NumericFailure::kSingularMatrix: return "SingularMatrix";
    case NumericFailure::kStepTooLarge: return "StepTooLarge";
    case NumericFailure::kTimescaleViolation: return "TimescaleViolation";
    case NumericFailure::kFitDiverged: return "FitDiverged";
    case NumericFailure::kNonFiniteObjective: return "NonFiniteObjective";
  }
  return "Unknown";
}

NumericError::NumericError(NumericFailure kind, const std::string& message)
    : Error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace asymcav
