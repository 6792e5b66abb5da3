#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "rrwoc/hypothesis.hpp"
#include "rrwoc/icp.hpp"
#include "rrwoc/regressnd.hpp"
#include "rrwoc/types.hpp"

namespace rrwoc {

enum class SolverKind { Exhaustive1D, Randomized1D, ExhaustiveND, RandomizedND, TrimmedICP };

/// "exhaustive1d", "randomized1d", "exhaustivend", "randomizednd", "icp".
std::string_view to_string(SolverKind kind) noexcept;
std::optional<SolverKind> parse_solver(std::string_view name);

/// Union of the knobs every solver understands; each solver reads its own.
struct SolverOptions {
  MarginSpec margin = MarginSpec::scalar(1e-9);
  double delta = 0.9;
  std::optional<std::size_t> k_hint;
  std::uint64_t seed = 0;
  bool with_offset = false;
  QBoundOptions q_bound;
  std::size_t max_iterations_cap = 10'000'000;
  std::size_t max_hypotheses = 1'000'000;
  unsigned threads = 1;
  AssignmentCost cost = AssignmentCost::MarginPenalized;
  IcpConfig icp;  // margin, seed and offset are taken from the fields above
};

struct SolveOutcome {
  ModelEstimate estimate;
  std::optional<IcpStatus> icp_status;
};

/// Runs one solver. 1-D solvers need dim == 1 and no offset.
SolveOutcome run_solver(SolverKind kind, const PointSet& X, const PointSet& Y,
                        const SolverOptions& options);

}  // namespace rrwoc
