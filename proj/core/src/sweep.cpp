#include "rrwoc/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <ostream>
#include <string>

#include "rrwoc/error.hpp"
#include "rrwoc/parallel.hpp"
#include "rrwoc/rng.hpp"

namespace rrwoc {
namespace {

struct Cell {
  std::size_t m;
  std::size_t k;
  double sigma;
};

struct TrialOutcome {
  bool solved = false;
  bool recovered = false;
  double error = 0.0;
};

double mean_scale_squared(ScaleRange s) {
  if (s.hi == s.lo) return s.lo * s.lo;
  return (s.hi * s.hi * s.hi - s.lo * s.lo * s.lo) / (3.0 * (s.hi - s.lo));
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

double margin_for_sigma(double sigma, double zero_sigma_margin) {
  return sigma > 0.0 ? sigma : zero_sigma_margin;
}

std::vector<double> default_sigma_grid() { return {0.0, 1e-3, 1e-2, 1e-1, 0.3, 1.0}; }

SweepConfig sweep_preset(SweepView view) {
  SweepConfig c;
  switch (view) {
    case SweepView::MissingVsSnr:
      c.k_values = {0};
      c.m_values.clear();
      for (std::size_t m = 20; m <= 40; m += 2) c.m_values.push_back(m);
      c.sigmas = default_sigma_grid();
      break;
    case SweepView::OutliersVsSnr:
      c.k_values.clear();
      for (std::size_t k = 1; k <= 19; ++k) c.k_values.push_back(k);
      c.sigmas = default_sigma_grid();
      break;
    case SweepView::OutlierCurves:
      c.k_values.clear();
      for (std::size_t k = 1; k <= 19; ++k) c.k_values.push_back(k);
      c.sigmas = {0.0};
      c.solvers = {SolverKind::ExhaustiveND, SolverKind::RandomizedND, SolverKind::TrimmedICP};
      c.max_hypotheses = 10'000'000;
      break;
  }
  return c;
}

std::optional<SweepView> parse_sweep_view(std::string_view name) {
  if (name == "missing-snr") return SweepView::MissingVsSnr;
  if (name == "outlier-snr") return SweepView::OutliersVsSnr;
  if (name == "outlier-curves") return SweepView::OutlierCurves;
  return std::nullopt;
}

std::vector<SweepRow> recovery_sweep(const SweepConfig& config) {
  if (config.trials == 0) throw Error(ErrorCode::InvalidParams, "trials must be >= 1");
  if (config.solvers.empty()) throw Error(ErrorCode::InvalidParams, "no solver selected");
  if (config.d == 0 || config.n == 0) throw Error(ErrorCode::InvalidParams, "d and n must be positive");

  std::vector<Cell> cells;
  for (std::size_t m : config.m_values) {
    for (std::size_t k : config.k_values) {
      for (double sigma : config.sigmas) {
        if (k >= config.n || m < config.n - k) {
          throw Error(ErrorCode::InvalidParams, "cell m=" + std::to_string(m) + ", k=" +
                                                    std::to_string(k) + " violates k < n <= m + k");
        }
        if (k > 0 && config.n - k < config.d + 1) {
          throw Error(ErrorCode::InvalidParams,
                      "cell k=" + std::to_string(k) + " leaves too few inliers to span an outlier hull");
        }
        if (!(sigma >= 0.0)) throw Error(ErrorCode::InvalidParams, "sigma must be nonnegative");
        cells.push_back({m, k, sigma});
      }
    }
  }

  const std::size_t n_solvers = config.solvers.size();
  const std::size_t tasks = cells.size() * config.trials;
  std::vector<TrialOutcome> outcomes(tasks * n_solvers);
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;

  parallel_chunks(tasks, resolve_threads(config.threads), [&](unsigned, std::size_t begin, std::size_t end) {
    for (std::size_t task = begin; task < end; ++task) {
      const std::size_t cell_index = task / config.trials;
      const std::size_t trial = task % config.trials;
      const Cell& cell = cells[cell_index];
      const std::uint64_t trial_seed = mix_seed(config.seed, cell_index, trial);

      SimConfig sim;
      sim.d = config.d;
      sim.n_target = config.n;
      sim.m_source = cell.m;
      sim.k_outliers = cell.k;
      sim.sigma = cell.sigma;
      sim.scale = config.scale;
      sim.seed = mix_seed(trial_seed, 0);
      const SimInstance instance = generate_instance(sim);

      SolverOptions options;
      options.margin = MarginSpec::scalar(margin_for_sigma(cell.sigma, config.zero_sigma_margin));
      options.delta = config.delta;
      options.k_hint = cell.k;
      options.seed = mix_seed(trial_seed, 1);
      options.q_bound = config.q_bound;
      options.max_iterations_cap = config.max_iterations_cap;
      options.max_hypotheses = config.max_hypotheses;
      options.threads = 1;
      options.icp = config.icp;

      for (std::size_t s = 0; s < n_solvers; ++s) {
        TrialOutcome& out = outcomes[task * n_solvers + s];
        try {
          const SolveOutcome r = run_solver(config.solvers[s], instance.X, instance.Y, options);
          out.solved = true;
          out.error = frobenius_distance(r.estimate.beta, instance.truth_beta);
          out.recovered = out.error <= config.recovery_tol;
        } catch (const Error&) {
          out.solved = false;
        }
      }

      const std::size_t finished = ++done;
      if (config.progress) {
        std::lock_guard lock(progress_mutex);
        config.progress(finished, tasks);
      }
    }
  });

  const double s2 = mean_scale_squared(config.scale);
  std::vector<SweepRow> rows;
  rows.reserve(cells.size() * n_solvers);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t s = 0; s < n_solvers; ++s) {
      SweepRow row;
      row.solver = config.solvers[s];
      row.d = config.d;
      row.n = config.n;
      row.m = cells[c].m;
      row.k = cells[c].k;
      row.sigma = cells[c].sigma;
      row.snr = cells[c].sigma > 0.0 ? s2 / (cells[c].sigma * cells[c].sigma)
                                     : std::numeric_limits<double>::infinity();
      row.outlier_ratio = static_cast<double>(row.k) / static_cast<double>(row.n);
      row.missing_ratio = static_cast<double>(row.m - (row.n - row.k)) / static_cast<double>(row.m);
      row.trials = config.trials;

      double error_sum = 0.0;
      std::size_t solved = 0;
      for (std::size_t t = 0; t < config.trials; ++t) {
        const TrialOutcome& out = outcomes[(c * config.trials + t) * n_solvers + s];
        if (!out.solved) continue;
        ++solved;
        error_sum += out.error;
        if (out.recovered) ++row.recoveries;
      }
      row.mean_beta_error = solved > 0 ? error_sum / static_cast<double>(solved)
                                       : std::numeric_limits<double>::quiet_NaN();
      rows.push_back(row);
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "solver,d,n,m,k,sigma,snr,outlier_ratio,missing_ratio,trials,recoveries,recovery_rate,"
         "mean_beta_error\n";
  for (const auto& r : rows) {
    out << to_string(r.solver) << ',' << r.d << ',' << r.n << ',' << r.m << ',' << r.k << ','
        << format_number(r.sigma) << ',' << format_number(r.snr) << ','
        << format_number(r.outlier_ratio) << ',' << format_number(r.missing_ratio) << ','
        << r.trials << ',' << r.recoveries << ',' << format_number(r.recovery_rate()) << ','
        << format_number(r.mean_beta_error) << '\n';
  }
}

}  // namespace rrwoc
