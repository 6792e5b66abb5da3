#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rrwoc/types.hpp"

namespace rrwoc::cli {

/// A point file: coordinates plus optional per-point margins.
struct Cloud {
  PointSet points;
  std::optional<std::vector<double>> margins;
};

/// Reads CSV (optional header, auto-detected) or JSON ({"dim", "points",
/// optional margin field}). `margin_field` names the CSV column or JSON field
/// holding per-point margins; that column is not a coordinate.
/// Throws Error(InvalidInput) with "path:line: ..." diagnostics.
Cloud read_cloud(const std::filesystem::path& path,
                 const std::optional<std::string>& margin_field = std::nullopt);

/// Numeric CSV matrix without margin handling (used for cost matrices).
Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path);

/// 17 significant digits, so the text parses back to the same double.
std::string format_double(double value);

/// Header x0..x{d-1}, one point per row.
std::string points_csv(const Eigen::MatrixXd& points);

/// Writes through a temporary file in the same directory, then renames.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace rrwoc::cli
