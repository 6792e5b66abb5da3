#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rrwoc/types.hpp"

namespace rrwoc {

struct IcpConfig {
  double trim_fraction = 0.2;            // share of worst matches dropped each iteration
  std::size_t max_iters = 100;
  double tol = 1e-9;                     // stop when ||beta_t - beta_{t-1}||_F < tol
  std::optional<Coefficients> init;      // unset: random rotation from `seed`
  std::uint64_t seed = 0;
  MarginSpec margin = MarginSpec::scalar(1e-9);  // inlier classification of the result
  bool with_offset = false;
};

enum class IcpStatus { Converged, MaxIterations, Degenerate };

const char* to_string(IcpStatus status) noexcept;

struct IcpResult {
  ModelEstimate estimate;
  IcpStatus status = IcpStatus::MaxIterations;
  std::vector<double> objective;  // trimmed sum of squared residuals per matching step
};

/// Trimmed ICP with a general linear map: match every target to its nearest
/// mapped source, keep the best (1 - trim_fraction) share, refit by least
/// squares, repeat. Stalling is reported through `status`, not thrown.
IcpResult trimmed_icp(const PointSet& X, const PointSet& Y, const IcpConfig& config);

}  // namespace rrwoc
