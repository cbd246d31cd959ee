#include "errors.hpp"

namespace vortigen {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNonPhysicalState: return "NonPhysicalState";
    case ErrorCode::kConventionMismatch: return "ConventionMismatch";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kInsufficientSnapshots: return "InsufficientSnapshots";
    case ErrorCode::kMissingSnapshots: return "MissingSnapshots";
    case ErrorCode::kStagnationAtSeed: return "StagnationAtSeed";
    case ErrorCode::kSeedOutsideDomain: return "SeedOutsideDomain";
    case ErrorCode::kPointOutsideDomain: return "PointOutsideDomain";
    case ErrorCode::kDegenerateTrajectory: return "DegenerateTrajectory";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kTooCloseToBoundary: return "TooCloseToBoundary";
    case ErrorCode::kWrongSurfaceKind: return "WrongSurfaceKind";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kGridInferenceError: return "GridInferenceError";
    case ErrorCode::kIoError: return "IoError";
  }
  return "UnknownError";
}

int exit_class(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonConvergence:
    case ErrorCode::kDegenerateTrajectory:
      return 3;
    default:
      return 2;
  }
}

}  // namespace vortigen
