#include "rrwoc/error.hpp"

namespace rrwoc {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::DegenerateCovariates: return "DegenerateCovariates";
    case ErrorCode::ZeroMomentSum: return "ZeroMomentSum";
    case ErrorCode::NoValidHypothesis: return "NoValidHypothesis";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::IterationCapExceeded: return "IterationCapExceeded";
    case ErrorCode::DegenerateHull: return "DegenerateHull";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace rrwoc
