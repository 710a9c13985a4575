#pragma once

#include <stdexcept>
#include <string>

namespace tether {

enum class ErrorCode {
  kParseError,
  kOverlappingObstacles,
  kAnchorInObstacle,
  kAnchorOutsideWorkspace,
  kObstacleOutsideWorkspace,
  kNonpositiveTether,
  kGeneratorConstructionFailed,
  kIndexOutOfRange,
  kVertexOnGenerator,
  kConnectivityError,
  kDegenerateInput,
  kPointNotInFreeSpace,
  kSleeveInvalid,
  kNotASleeve,
  kAnchorNotInFreeSpace,
  kElementNotInComplex,
  kLiftExceedsTether,
  kTetherInfeasible,
  kGoalUnreachable,
  kAnchorCellBlocked,
  kIoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tether
