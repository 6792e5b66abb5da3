#pragma once

#include <stdexcept>
#include <string>

namespace rrwoc {

enum class ErrorCode {
  InvalidInput,
  DimensionMismatch,
  RankDeficient,
  DegenerateCovariates,
  ZeroMomentSum,
  NoValidHypothesis,
  InvalidParams,
  InstanceTooLarge,
  IterationCapExceeded,
  DegenerateHull,
};

const char* to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-readable error code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rrwoc
