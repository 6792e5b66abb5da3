#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "rrwoc/icp.hpp"
#include "rrwoc/regressnd.hpp"
#include "rrwoc/simulate.hpp"
#include "rrwoc/solvers.hpp"

namespace rrwoc {

/// Monte-Carlo recovery experiment over a grid of (m, k, sigma) cells.
///
/// Every trial draws one instance and runs each listed solver on it, so the
/// solvers of a cell see identical data. Trial seeds are derived from
/// (seed, cell index, trial index), which makes results independent of the
/// thread count and of the order in which trials finish.
struct SweepConfig {
  std::size_t d = 3;
  std::size_t n = 20;
  std::vector<std::size_t> k_values{1, 5, 9};
  std::vector<double> sigmas{0.0};
  std::vector<std::size_t> m_values{20};
  std::size_t trials = 100;
  std::vector<SolverKind> solvers{SolverKind::RandomizedND};
  double delta = 0.9;
  QBoundOptions q_bound;
  IcpConfig icp;
  ScaleRange scale;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  double recovery_tol = 1e-3;       // success: ||beta_hat - beta||_F <= recovery_tol
  double zero_sigma_margin = 1e-9;  // margin used where sigma = 0 (otherwise margin = sigma)
  std::size_t max_hypotheses = 1'000'000;
  std::size_t max_iterations_cap = 10'000'000;
  std::function<void(std::size_t done, std::size_t total)> progress;
};

struct SweepRow {
  SolverKind solver = SolverKind::RandomizedND;
  std::size_t d = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 0;
  double sigma = 0.0;
  double snr = 0.0;            // E[s^2] / sigma^2, infinite for sigma = 0
  double outlier_ratio = 0.0;  // k / n
  double missing_ratio = 0.0;  // (m - (n - k)) / m
  std::size_t trials = 0;
  std::size_t recoveries = 0;
  double mean_beta_error = 0.0;  // over trials where the solver returned; NaN if none did

  double recovery_rate() const noexcept {
    return trials == 0 ? 0.0 : static_cast<double>(recoveries) / static_cast<double>(trials);
  }
};

/// One row per (cell, solver), cells ordered m, then k, then sigma.
std::vector<SweepRow> recovery_sweep(const SweepConfig& config);

double margin_for_sigma(double sigma, double zero_sigma_margin);

/// sigma in {0, 1e-3, 1e-2, 1e-1, 0.3, 1}.
std::vector<double> default_sigma_grid();

enum class SweepView {
  MissingVsSnr,   // m = 20..40, k = 0, sigma grid
  OutliersVsSnr,  // k = 1..19, m = 20, sigma grid
  OutlierCurves,  // k = 1..19, sigma = 0, exhaustive vs randomized vs ICP
};

SweepConfig sweep_preset(SweepView view);
std::optional<SweepView> parse_sweep_view(std::string_view name);

/// Header: solver,d,n,m,k,sigma,snr,outlier_ratio,missing_ratio,trials,
/// recoveries,recovery_rate,mean_beta_error
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace rrwoc
