#include "report.hpp"

#include "io.hpp"

namespace rrwoc::cli {
namespace {

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char ch : value) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + '"';
}

void csv_row(std::string& out, const std::string& field, const std::string& i, const std::string& j,
             const std::string& value) {
  out += field + ',' + i + ',' + j + ',' + csv_field(value) + '\n';
}

}  // namespace

nlohmann::ordered_json beta_json(const Coefficients& beta) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  const Eigen::MatrixXd& b = beta.linear();
  for (Eigen::Index r = 0; r < b.rows(); ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Eigen::Index c = 0; c < b.cols(); ++c) row.push_back(b(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::ordered_json report_json(const RunReport& report) {
  const ModelEstimate& e = report.estimate;
  nlohmann::ordered_json j;
  j["schema"] = "1";
  j["solver"] = report.solver;
  j["seed"] = report.seed;
  j["seed_source"] = report.seed_from_entropy ? "entropy" : "flag";
  j["config"] = report.config;
  j["dim"] = e.beta.dim();
  j["n_target"] = e.assignment.n_target();
  j["m_source"] = e.assignment.m_source();
  j["beta"] = beta_json(e.beta);
  if (e.beta.offset()) {
    j["offset"] = std::vector<double>(e.beta.offset()->data(),
                                      e.beta.offset()->data() + e.beta.offset()->size());
  } else {
    j["offset"] = nullptr;
  }
  nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
  for (const auto& p : e.assignment.pairs()) pairs.push_back({p.target, p.source});
  j["assignment"] = std::move(pairs);
  j["residuals"] = e.residuals;
  j["inliers"] = e.inliers;
  j["inlier_count"] = e.inlier_count;
  j["iterations"] = e.stats.iterations;
  j["degenerate"] = e.stats.degenerate;
  j["winner"] = e.stats.winner;
  j["refit_accepted"] = e.stats.refit_accepted;
  if (report.icp_status) j["icp_status"] = to_string(*report.icp_status);
  if (report.wall_time_s) j["wall_time_s"] = *report.wall_time_s;
  return j;
}

std::string report_csv(const RunReport& report) {
  const ModelEstimate& e = report.estimate;
  std::string out = "field,i,j,value\n";
  csv_row(out, "schema", "", "", "1");
  csv_row(out, "solver", "", "", report.solver);
  csv_row(out, "seed", "", "", std::to_string(report.seed));
  csv_row(out, "seed_source", "", "", report.seed_from_entropy ? "entropy" : "flag");
  for (const auto& item : report.config.items()) {
    const auto& v = item.value();
    csv_row(out, "config", item.key(), "", v.is_string() ? v.get<std::string>() : v.dump());
  }
  const Eigen::MatrixXd& b = e.beta.linear();
  for (Eigen::Index r = 0; r < b.rows(); ++r) {
    for (Eigen::Index c = 0; c < b.cols(); ++c) {
      csv_row(out, "beta", std::to_string(r), std::to_string(c), format_double(b(r, c)));
    }
  }
  if (e.beta.offset()) {
    for (Eigen::Index c = 0; c < e.beta.offset()->size(); ++c) {
      csv_row(out, "offset", "", std::to_string(c), format_double((*e.beta.offset())(c)));
    }
  }
  for (std::size_t i = 0; i < e.assignment.size(); ++i) {
    const auto& p = e.assignment.pairs()[i];
    csv_row(out, "pair", std::to_string(p.target), std::to_string(p.source),
            format_double(e.residuals[i]));
  }
  for (std::size_t q : e.inliers) csv_row(out, "inlier", std::to_string(q), "", "1");
  csv_row(out, "inlier_count", "", "", std::to_string(e.inlier_count));
  csv_row(out, "iterations", "", "", std::to_string(e.stats.iterations));
  csv_row(out, "degenerate", "", "", std::to_string(e.stats.degenerate));
  csv_row(out, "winner", "", "", std::to_string(e.stats.winner));
  csv_row(out, "refit_accepted", "", "", e.stats.refit_accepted ? "1" : "0");
  if (report.icp_status) csv_row(out, "icp_status", "", "", to_string(*report.icp_status));
  if (report.wall_time_s) csv_row(out, "wall_time_s", "", "", format_double(*report.wall_time_s));
  return out;
}

}  // namespace rrwoc::cli
