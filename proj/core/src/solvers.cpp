#include "rrwoc/solvers.hpp"

#include <array>
#include <utility>

#include "rrwoc/error.hpp"
#include "rrwoc/regress1d.hpp"

namespace rrwoc {
namespace {

constexpr std::array<std::pair<SolverKind, std::string_view>, 5> kNames{{
    {SolverKind::Exhaustive1D, "exhaustive1d"},
    {SolverKind::Randomized1D, "randomized1d"},
    {SolverKind::ExhaustiveND, "exhaustivend"},
    {SolverKind::RandomizedND, "randomizednd"},
    {SolverKind::TrimmedICP, "icp"},
}};

Config1D config_1d(const PointSet& X, const PointSet& Y, const SolverOptions& o) {
  if (X.dim() != 1 || Y.dim() != 1) {
    throw Error(ErrorCode::InvalidParams, "1-D solvers need one-dimensional point sets");
  }
  if (o.with_offset) throw Error(ErrorCode::InvalidParams, "1-D solvers do not fit an offset");
  Config1D c;
  c.margin = o.margin;
  c.delta = o.delta;
  c.k_hint = o.k_hint;
  c.seed = o.seed;
  c.threads = o.threads;
  c.cost = o.cost;
  c.max_iterations_cap = o.max_iterations_cap;
  return c;
}

ConfigND config_nd(const SolverOptions& o) {
  ConfigND c;
  c.margin = o.margin;
  c.delta = o.delta;
  c.k_hint = o.k_hint;
  c.seed = o.seed;
  c.max_iterations_cap = o.max_iterations_cap;
  c.max_hypotheses = o.max_hypotheses;
  c.with_offset = o.with_offset;
  c.q_bound = o.q_bound;
  c.threads = o.threads;
  c.cost = o.cost;
  return c;
}

}  // namespace

std::string_view to_string(SolverKind kind) noexcept {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<SolverKind> parse_solver(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

SolveOutcome run_solver(SolverKind kind, const PointSet& X, const PointSet& Y,
                        const SolverOptions& options) {
  switch (kind) {
    case SolverKind::Exhaustive1D: {
      const Config1D config = config_1d(X, Y, options);
      const auto x = X.values();
      const auto y = Y.values();
      return {rrwoc_1d_exhaustive(x, y, config), std::nullopt};
    }
    case SolverKind::Randomized1D: {
      const Config1D config = config_1d(X, Y, options);
      const auto x = X.values();
      const auto y = Y.values();
      return {rrwoc_1d_randomized(x, y, config), std::nullopt};
    }
    case SolverKind::ExhaustiveND:
      return {rrwoc_nd_exhaustive(X, Y, config_nd(options)), std::nullopt};
    case SolverKind::RandomizedND:
      return {rrwoc_nd_randomized(X, Y, config_nd(options)), std::nullopt};
    case SolverKind::TrimmedICP: {
      IcpConfig icp = options.icp;
      icp.margin = options.margin;
      icp.seed = options.seed;
      icp.with_offset = options.with_offset;
      IcpResult r = trimmed_icp(X, Y, icp);
      return {std::move(r.estimate), r.status};
    }
  }
  throw Error(ErrorCode::InvalidParams, "unknown solver");
}

}  // namespace rrwoc
