#ifndef VORTIGEN_ERRORS_HPP_
#define VORTIGEN_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace vortigen {

enum class ErrorCode {
  kInvalidArgument = 1,
  kNonPhysicalState,
  kConventionMismatch,
  kShapeMismatch,
  kInsufficientSnapshots,
  kMissingSnapshots,
  kStagnationAtSeed,
  kSeedOutsideDomain,
  kPointOutsideDomain,
  kDegenerateTrajectory,
  kNonConvergence,
  kTooCloseToBoundary,
  kWrongSurfaceKind,
  kParseError,
  kGridInferenceError,
  kIoError,
};

const char* error_name(ErrorCode code);

// Exit-code class used by the command-line front end: 2 for bad input,
// 3 for numerical failure.
int exit_class(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace vortigen

#endif  // VORTIGEN_ERRORS_HPP_
