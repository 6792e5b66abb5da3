#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "io.hpp"
#include "report.hpp"
#include "rrwoc/assignment.hpp"
#include "rrwoc/parallel.hpp"
#include "rrwoc/simulate.hpp"
#include "rrwoc/solvers.hpp"
#include "rrwoc/sweep.hpp"

namespace rrwoc::cli {
namespace {

using json = nlohmann::ordered_json;

struct Common {
  std::string output = "json";
  std::string out_path;
  unsigned threads = 0;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
};

struct Seed {
  std::uint64_t value = 0;
  bool from_entropy = false;
};

Seed resolve_seed(const Common& c, std::ostream& err) {
  if (c.seed_opt->count() > 0) return {c.seed, false};
  std::random_device device;
  const std::uint64_t value = (static_cast<std::uint64_t>(device()) << 32) ^ device();
  err << "seed: " << value << '\n';
  return {value, true};
}

// The flag (0 = all cores) capped by RRWOC_THREADS when that is set.
unsigned resolve_thread_count(const Common& c) {
  unsigned threads = resolve_threads(c.threads_opt->count() > 0 ? c.threads : 0);
  if (const char* env = std::getenv("RRWOC_THREADS"); env && *env) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (*end != '\0' || cap == 0) {
      throw Error(ErrorCode::InvalidParams, "RRWOC_THREADS must be a positive integer");
    }
    threads = static_cast<unsigned>(std::min<unsigned long>(threads, cap));
  }
  return threads;
}

void emit(const Common& c, const std::string& content, std::ostream& out) {
  if (c.out_path.empty()) {
    out << content;
  } else {
    write_file_atomic(c.out_path, content);
  }
}

void add_output_flags(CLI::App* cmd, Common& c, bool with_format) {
  if (with_format) {
    cmd->add_option("--output", c.output, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
  }
  cmd->add_option("--out", c.out_path, "Write to this file instead of stdout");
}

void add_seed_flags(CLI::App* cmd, Common& c) {
  c.seed_opt = cmd->add_option("--seed", c.seed, "RNG seed; drawn from entropy and echoed when absent");
  c.threads_opt = cmd->add_option("--threads", c.threads, "Worker threads, 0 = all cores (capped by RRWOC_THREADS)");
}

// ---------------------------------------------------------------- solve

struct SolveArgs {
  std::string source_file;
  std::string target_file;
  std::string solver = "randomizednd";
  double nu = 1e-9;
  std::string nu_column;
  double delta = 0.9;
  std::size_t k_hint = 0;
  bool offset = false;
  bool plain_q = false;
  std::string q_numerator = "target";
  std::string cost = "penalized";
  double trim = 0.2;
  std::size_t max_iters = 100;
  double tol = 1e-9;
  std::string init = "random";
  std::size_t max_iterations = 10'000'000;
  std::size_t max_hypotheses = 1'000'000;
  bool timing = false;
  std::map<std::string, CLI::Option*> opts;
};

void warn_unused(const SolveArgs& a, SolverKind kind, std::ostream& err) {
  const bool exhaustive = kind == SolverKind::Exhaustive1D || kind == SolverKind::ExhaustiveND;
  const bool randomized = kind == SolverKind::Randomized1D || kind == SolverKind::RandomizedND;
  const bool icp = kind == SolverKind::TrimmedICP;
  auto given = [&](const char* name) { return a.opts.at(name)->count() > 0; };
  auto warn = [&](const char* flag) {
    err << "warning: " << flag << " is ignored by solver " << a.solver << '\n';
  };
  for (const char* flag : {"--delta", "--k-hint", "--plain-q", "--q-numerator", "--max-iterations"}) {
    if (!randomized && given(flag)) warn(flag);
  }
  if (!exhaustive && given("--max-hypotheses")) warn("--max-hypotheses");
  for (const char* flag : {"--trim", "--max-iters", "--tol", "--init"}) {
    if (!icp && given(flag)) warn(flag);
  }
  if (icp && given("--cost")) warn("--cost");
}

int cmd_solve(const SolveArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  const auto kind = parse_solver(a.solver);
  if (!kind) throw Error(ErrorCode::InvalidParams, "unknown solver " + a.solver);
  warn_unused(a, *kind, err);

  const Cloud source = read_cloud(a.source_file);
  const std::optional<std::string> margin_field =
      a.nu_column.empty() ? std::nullopt : std::optional<std::string>(a.nu_column);
  const Cloud target = read_cloud(a.target_file, margin_field);
  const Seed seed = resolve_seed(c, err);

  SolverOptions options;
  options.margin = target.margins ? MarginSpec::per_target(*target.margins) : MarginSpec::scalar(a.nu);
  options.delta = a.delta;
  if (a.opts.at("--k-hint")->count() > 0) options.k_hint = a.k_hint;
  options.seed = seed.value;
  options.with_offset = a.offset;
  options.q_bound.conservative = !a.plain_q;
  options.q_bound.numerator = a.plain_q ? QNumerator::SourceInliers : QNumerator::TargetInliers;
  if (a.opts.at("--q-numerator")->count() > 0) {
    options.q_bound.numerator = a.q_numerator == "source" ? QNumerator::SourceInliers : QNumerator::TargetInliers;
  }
  options.cost = a.cost == "residual" ? AssignmentCost::Residual : AssignmentCost::MarginPenalized;
  options.max_iterations_cap = a.max_iterations;
  options.max_hypotheses = a.max_hypotheses;
  options.threads = resolve_thread_count(c);
  options.icp.trim_fraction = a.trim;
  options.icp.max_iters = a.max_iters;
  options.icp.tol = a.tol;
  if (a.init == "identity") options.icp.init = Coefficients::identity(source.points.dim());

  json config;
  config["source"] = a.source_file;
  config["target"] = a.target_file;
  config["nu"] = target.margins ? json(nullptr) : json(a.nu);
  config["nu_column"] = target.margins ? json(a.nu_column) : json(nullptr);
  config["delta"] = a.delta;
  config["k_hint"] = options.k_hint ? json(*options.k_hint) : json(nullptr);
  config["offset"] = a.offset;
  config["conservative_q"] = options.q_bound.conservative;
  config["q_numerator"] = options.q_bound.numerator == QNumerator::SourceInliers ? "source" : "target";
  config["cost"] = a.cost;
  config["max_iterations"] = a.max_iterations;
  config["max_hypotheses"] = a.max_hypotheses;
  if (*kind == SolverKind::TrimmedICP) {
    config["trim"] = a.trim;
    config["max_iters"] = a.max_iters;
    config["tol"] = a.tol;
    config["init"] = a.init;
  }

  const auto start = std::chrono::steady_clock::now();
  SolveOutcome outcome = run_solver(*kind, source.points, target.points, options);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

  RunReport report{a.solver, std::move(config), seed.value, seed.from_entropy,
                   std::move(outcome.estimate), outcome.icp_status, std::nullopt};
  if (a.timing) report.wall_time_s = elapsed.count();
  emit(c, c.output == "csv" ? report_csv(report) : report_json(report).dump(2) + "\n", out);
  return 0;
}

void add_solve(CLI::App& app, SolveArgs& a, Common& c) {
  CLI::App* cmd = app.add_subcommand("solve", "Estimate coefficients, correspondence and inliers");
  cmd->add_option("source", a.source_file, "Source point file X (CSV or JSON)")->required();
  cmd->add_option("target", a.target_file, "Target point file Y (CSV or JSON)")->required();
  cmd->add_option("--solver", a.solver, "exhaustive1d|randomized1d|exhaustivend|randomizednd|icp")
      ->check(CLI::IsMember({"exhaustive1d", "randomized1d", "exhaustivend", "randomizednd", "icp"}))
      ->capture_default_str();
  auto* nu = cmd->add_option("--nu", a.nu, "Inlier margin")->check(CLI::NonNegativeNumber)->capture_default_str();
  auto* nu_col = cmd->add_option("--nu-column", a.nu_column, "Per-target margins from this column/field of the target file");
  nu->excludes(nu_col);
  a.opts["--delta"] = cmd->add_option("--delta", a.delta, "Success probability of the randomized search")
                          ->capture_default_str();
  a.opts["--k-hint"] = cmd->add_option("--k-hint", a.k_hint, "Assumed outlier count (default floor((n-1)/2))");
  cmd->add_flag("--offset", a.offset, "Fit an affine offset");
  a.opts["--plain-q"] = cmd->add_flag("--plain-q", a.plain_q, "Iteration bound without the d! factor and with C(m-k, d)");
  a.opts["--q-numerator"] = cmd->add_option("--q-numerator", a.q_numerator, "target: C(n-k, d); source: C(m-k, d)")
                                ->check(CLI::IsMember({"target", "source"}));
  a.opts["--cost"] = cmd->add_option("--cost", a.cost, "Assignment cost: penalized|residual")
                         ->check(CLI::IsMember({"penalized", "residual"}))
                         ->capture_default_str();
  a.opts["--trim"] = cmd->add_option("--trim", a.trim, "ICP trim fraction")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  a.opts["--max-iters"] = cmd->add_option("--max-iters", a.max_iters, "ICP iteration budget")->capture_default_str();
  a.opts["--tol"] = cmd->add_option("--tol", a.tol, "ICP convergence tolerance")->capture_default_str();
  a.opts["--init"] = cmd->add_option("--init", a.init, "ICP start: random|identity")
                         ->check(CLI::IsMember({"random", "identity"}))
                         ->capture_default_str();
  a.opts["--max-iterations"] = cmd->add_option("--max-iterations", a.max_iterations, "Refuse randomized runs whose bound exceeds this")
                                   ->capture_default_str();
  a.opts["--max-hypotheses"] = cmd->add_option("--max-hypotheses", a.max_hypotheses, "Refuse exhaustive runs above this many hypotheses")
                                   ->capture_default_str();
  cmd->add_flag("--timing", a.timing, "Include wall time in the report (breaks byte-identical reruns)");
  add_output_flags(cmd, c, true);
  add_seed_flags(cmd, c);
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string config_file;
  std::string out_dir;
  SimConfig sim;
  std::map<std::string, CLI::Option*> opts;
};

template <typename T>
T get_field(const json& j, const std::string& key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::InvalidInput, where + ": field \"" + key + "\" has the wrong type");
  }
}

void reject_unknown_keys(const json& j, const std::set<std::string>& known, const std::string& where) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, where + ": expected a JSON object");
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) {
      throw Error(ErrorCode::InvalidInput, where + ": unknown field \"" + item.key() + "\"");
    }
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, path + ": " + e.what());
  }
}

int cmd_simulate(SimulateArgs& a, const Common& c, std::ostream& err) {
  SimConfig sim;
  bool seed_in_file = false;
  if (!a.config_file.empty()) {
    const json j = read_json_file(a.config_file);
    reject_unknown_keys(j, {"d", "n", "m", "k", "sigma", "scale_lo", "scale_hi", "seed"}, a.config_file);
    if (j.contains("d")) sim.d = get_field<std::size_t>(j, "d", a.config_file);
    if (j.contains("n")) sim.n_target = get_field<std::size_t>(j, "n", a.config_file);
    if (j.contains("m")) sim.m_source = get_field<std::size_t>(j, "m", a.config_file);
    if (j.contains("k")) sim.k_outliers = get_field<std::size_t>(j, "k", a.config_file);
    if (j.contains("sigma")) sim.sigma = get_field<double>(j, "sigma", a.config_file);
    if (j.contains("scale_lo")) sim.scale.lo = get_field<double>(j, "scale_lo", a.config_file);
    if (j.contains("scale_hi")) sim.scale.hi = get_field<double>(j, "scale_hi", a.config_file);
    if (j.contains("seed")) {
      sim.seed = get_field<std::uint64_t>(j, "seed", a.config_file);
      seed_in_file = true;
    }
  }
  auto given = [&](const char* name) { return a.opts.at(name)->count() > 0; };
  if (given("--d")) sim.d = a.sim.d;
  if (given("--n")) sim.n_target = a.sim.n_target;
  if (given("--m")) sim.m_source = a.sim.m_source;
  if (given("--k")) sim.k_outliers = a.sim.k_outliers;
  if (given("--sigma")) sim.sigma = a.sim.sigma;
  if (given("--scale-lo")) sim.scale.lo = a.sim.scale.lo;
  if (given("--scale-hi")) sim.scale.hi = a.sim.scale.hi;

  Seed seed{sim.seed, false};
  if (c.seed_opt->count() > 0 || !seed_in_file) seed = resolve_seed(c, err);
  sim.seed = seed.value;

  const SimInstance inst = generate_instance(sim);

  json truth;
  truth["schema"] = "1";
  truth["seed"] = seed.value;
  truth["seed_source"] = seed.from_entropy ? "entropy" : "flag";
  truth["config"] = {{"d", sim.d},         {"n", sim.n_target},       {"m", sim.m_source},
                     {"k", sim.k_outliers}, {"sigma", sim.sigma},     {"scale_lo", sim.scale.lo},
                     {"scale_hi", sim.scale.hi}};
  truth["beta"] = beta_json(inst.truth_beta);
  json pairs = json::array();
  for (const auto& p : inst.truth_assignment.pairs()) pairs.push_back({p.target, p.source});
  truth["assignment"] = std::move(pairs);
  truth["inliers"] = inst.truth_inliers;
  truth["outliers"] = inst.truth_outliers;

  const std::filesystem::path dir(a.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::InvalidInput, "cannot create " + dir.string() + ": " + ec.message());
  write_file_atomic(dir / "X.csv", points_csv(inst.X.matrix()));
  write_file_atomic(dir / "Y.csv", points_csv(inst.Y.matrix()));
  write_file_atomic(dir / "truth.json", truth.dump(2) + "\n");
  err << "wrote " << (dir / "X.csv").string() << ", " << (dir / "Y.csv").string() << ", "
      << (dir / "truth.json").string() << '\n';
  return 0;
}

void add_simulate(CLI::App& app, SimulateArgs& a, Common& c) {
  CLI::App* cmd = app.add_subcommand("simulate", "Write a synthetic instance: X.csv, Y.csv, truth.json");
  cmd->add_option("--config", a.config_file, "JSON with any of d, n, m, k, sigma, scale_lo, scale_hi, seed");
  cmd->add_option("--out", a.out_dir, "Output directory")->required();
  a.opts["--d"] = cmd->add_option("--d", a.sim.d, "Dimension")->capture_default_str();
  a.opts["--n"] = cmd->add_option("--n", a.sim.n_target, "Target points")->capture_default_str();
  a.opts["--m"] = cmd->add_option("--m", a.sim.m_source, "Source points")->capture_default_str();
  a.opts["--k"] = cmd->add_option("--k", a.sim.k_outliers, "Outliers among the targets")->capture_default_str();
  a.opts["--sigma"] = cmd->add_option("--sigma", a.sim.sigma, "Inlier noise level")->capture_default_str();
  a.opts["--scale-lo"] = cmd->add_option("--scale-lo", a.sim.scale.lo, "Smallest map scale")->capture_default_str();
  a.opts["--scale-hi"] = cmd->add_option("--scale-hi", a.sim.scale.hi, "Largest map scale")->capture_default_str();
  add_seed_flags(cmd, c);
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
  std::string config_file;
  std::string preset;
  std::size_t trials = 0;
  CLI::Option* trials_opt = nullptr;
};

std::vector<SolverKind> parse_solver_list(const json& j, const std::string& where) {
  std::vector<SolverKind> out;
  for (const auto& name : get_field<std::vector<std::string>>(j, "solvers", where)) {
    const auto kind = parse_solver(name);
    if (!kind) throw Error(ErrorCode::InvalidInput, where + ": unknown solver \"" + name + "\"");
    out.push_back(*kind);
  }
  return out;
}

void apply_sweep_json(SweepConfig& s, const json& j, const std::string& where, bool& seed_set) {
  reject_unknown_keys(j,
                      {"d", "n", "k_values", "sigmas", "m_values", "trials", "solvers", "delta",
                       "conservative_q", "q_numerator", "seed", "recovery_tol", "zero_sigma_margin",
                       "max_hypotheses", "max_iterations", "scale_lo", "scale_hi", "icp"},
                      where);
  if (j.contains("d")) s.d = get_field<std::size_t>(j, "d", where);
  if (j.contains("n")) s.n = get_field<std::size_t>(j, "n", where);
  if (j.contains("k_values")) s.k_values = get_field<std::vector<std::size_t>>(j, "k_values", where);
  if (j.contains("sigmas")) s.sigmas = get_field<std::vector<double>>(j, "sigmas", where);
  if (j.contains("m_values")) s.m_values = get_field<std::vector<std::size_t>>(j, "m_values", where);
  if (j.contains("trials")) s.trials = get_field<std::size_t>(j, "trials", where);
  if (j.contains("solvers")) s.solvers = parse_solver_list(j, where);
  if (j.contains("delta")) s.delta = get_field<double>(j, "delta", where);
  if (j.contains("conservative_q")) s.q_bound.conservative = get_field<bool>(j, "conservative_q", where);
  if (j.contains("q_numerator")) {
    const auto v = get_field<std::string>(j, "q_numerator", where);
    if (v != "target" && v != "source") {
      throw Error(ErrorCode::InvalidInput, where + ": q_numerator must be \"target\" or \"source\"");
    }
    s.q_bound.numerator = v == "source" ? QNumerator::SourceInliers : QNumerator::TargetInliers;
  }
  if (j.contains("seed")) {
    s.seed = get_field<std::uint64_t>(j, "seed", where);
    seed_set = true;
  }
  if (j.contains("recovery_tol")) s.recovery_tol = get_field<double>(j, "recovery_tol", where);
  if (j.contains("zero_sigma_margin")) s.zero_sigma_margin = get_field<double>(j, "zero_sigma_margin", where);
  if (j.contains("max_hypotheses")) s.max_hypotheses = get_field<std::size_t>(j, "max_hypotheses", where);
  if (j.contains("max_iterations")) s.max_iterations_cap = get_field<std::size_t>(j, "max_iterations", where);
  if (j.contains("scale_lo")) s.scale.lo = get_field<double>(j, "scale_lo", where);
  if (j.contains("scale_hi")) s.scale.hi = get_field<double>(j, "scale_hi", where);
  if (j.contains("icp")) {
    const json& icp = j["icp"];
    const std::string icp_where = where + " (icp)";
    reject_unknown_keys(icp, {"trim", "max_iters", "tol"}, icp_where);
    if (icp.contains("trim")) s.icp.trim_fraction = get_field<double>(icp, "trim", icp_where);
    if (icp.contains("max_iters")) s.icp.max_iters = get_field<std::size_t>(icp, "max_iters", icp_where);
    if (icp.contains("tol")) s.icp.tol = get_field<double>(icp, "tol", icp_where);
  }
}

int cmd_sweep(const SweepArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
  if (a.config_file.empty() && a.preset.empty()) {
    throw Error(ErrorCode::InvalidParams, "sweep needs --config or --preset");
  }
  SweepConfig s;
  if (!a.preset.empty()) {
    const auto view = parse_sweep_view(a.preset);
    if (!view) throw Error(ErrorCode::InvalidParams, "unknown preset " + a.preset);
    s = sweep_preset(*view);
  }
  bool seed_set = false;
  if (!a.config_file.empty()) apply_sweep_json(s, read_json_file(a.config_file), a.config_file, seed_set);
  if (a.trials_opt->count() > 0) s.trials = a.trials;
  if (c.seed_opt->count() > 0 || !seed_set) s.seed = resolve_seed(c, err).value;
  s.threads = resolve_thread_count(c);

  int last_percent = -1;
  s.progress = [&](std::size_t done, std::size_t total) {
    const int percent = static_cast<int>(100 * done / std::max<std::size_t>(total, 1));
    if (percent / 10 != last_percent / 10 || done == total) {
      err << "sweep: " << done << "/" << total << " trials\n";
      last_percent = percent;
    }
  };
  const auto rows = recovery_sweep(s);
  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  emit(c, csv.str(), out);
  return 0;
}

void add_sweep(CLI::App& app, SweepArgs& a, Common& c) {
  CLI::App* cmd = app.add_subcommand("sweep", "Monte-Carlo recovery table as CSV");
  cmd->add_option("--config", a.config_file, "JSON sweep grid (overrides the preset)");
  cmd->add_option("--preset", a.preset, "missing-snr|outlier-snr|outlier-curves");
  a.trials_opt = cmd->add_option("--trials", a.trials, "Trials per cell");
  add_output_flags(cmd, c, false);
  add_seed_flags(cmd, c);
}

// ---------------------------------------------------------------- assign

struct AssignArgs {
  std::string cost_file;
};

int cmd_assign(const AssignArgs& a, const Common& c, std::ostream& out) {
  const Eigen::MatrixXd cost = read_matrix_csv(a.cost_file);
  const AssignmentResult result = linear_assignment(CostMatrix(cost));
  std::string text;
  if (c.output == "csv") {
    text = "row,col,cost\n";
    for (const auto& p : result.assignment.pairs()) {
      text += std::to_string(p.target) + ',' + std::to_string(p.source) + ',' +
              format_double(cost(static_cast<Eigen::Index>(p.target), static_cast<Eigen::Index>(p.source))) +
              '\n';
    }
  } else {
    json j;
    j["schema"] = "1";
    j["n_rows"] = cost.rows();
    j["m_cols"] = cost.cols();
    json pairs = json::array();
    for (const auto& p : result.assignment.pairs()) pairs.push_back({p.target, p.source});
    j["pairs"] = std::move(pairs);
    j["total_cost"] = result.total_cost;
    text = j.dump(2) + "\n";
  }
  emit(c, text, out);
  return 0;
}

void add_assign(CLI::App& app, AssignArgs& a, Common& c) {
  CLI::App* cmd = app.add_subcommand("assign", "Minimum-cost assignment of a cost-matrix CSV");
  cmd->add_option("costs", a.cost_file, "Cost matrix CSV, one row per line")->required();
  add_output_flags(cmd, c, true);
}

}  // namespace

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::InvalidParams:
      return 1;
    default:
      return 2;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robust regression without correspondence", "rrwoc"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every command");

  Common solve_common, sim_common, sweep_common, assign_common;
  SolveArgs solve_args;
  SimulateArgs sim_args;
  SweepArgs sweep_args;
  AssignArgs assign_args;
  add_solve(app, solve_args, solve_common);
  add_simulate(app, sim_args, sim_common);
  add_sweep(app, sweep_args, sweep_common);
  add_assign(app, assign_args, assign_common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand("solve")) return cmd_solve(solve_args, solve_common, out, err);
    if (app.got_subcommand("simulate")) return cmd_simulate(sim_args, sim_common, err);
    if (app.got_subcommand("sweep")) return cmd_sweep(sweep_args, sweep_common, out, err);
    if (app.got_subcommand("assign")) return cmd_assign(assign_args, assign_common, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace rrwoc::cli
