#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "rrwoc/icp.hpp"
#include "rrwoc/types.hpp"

namespace rrwoc::cli {

/// Everything needed to reproduce a solve: input paths, options and seed.
struct RunReport {
  std::string solver;
  nlohmann::ordered_json config;  // solver options as given
  std::uint64_t seed = 0;
  bool seed_from_entropy = false;
  ModelEstimate estimate;
  std::optional<IcpStatus> icp_status;
  std::optional<double> wall_time_s;  // only when timing was requested
};

nlohmann::ordered_json report_json(const RunReport& report);

/// Long format with header field,i,j,value; one scalar per row.
std::string report_csv(const RunReport& report);

/// Coefficients as a row-major array of rows.
nlohmann::ordered_json beta_json(const Coefficients& beta);

}  // namespace rrwoc::cli
