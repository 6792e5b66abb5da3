#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rrwoc/hypothesis.hpp"
#include "rrwoc/types.hpp"

namespace rrwoc {

/// Which inlier count enters the numerator binomial of the tuple hit probability.
enum class QNumerator {
  TargetInliers,  // C(n - k, d): k outliers live among the n targets
  SourceInliers,  // C(m - k, d): count inliers among the m sources
};

struct QBoundOptions {
  /// Divide the hit probability by d!: positional tuple matching only hits
  /// when the sampled source tuple is in the right order.
  bool conservative = true;
  QNumerator numerator = QNumerator::TargetInliers;
};

struct ConfigND {
  MarginSpec margin = MarginSpec::scalar(1e-9);
  double delta = 0.9;
  std::optional<std::size_t> k_hint;
  std::uint64_t seed = 0;
  std::size_t max_iterations_cap = 10'000'000;
  std::size_t max_hypotheses = 1'000'000;  // exhaustive enumeration cap
  bool with_offset = false;                // fit x -> x * beta + offset
  QBoundOptions q_bound;
  unsigned threads = 1;                    // 0 = hardware concurrency
  AssignmentCost cost = AssignmentCost::MarginPenalized;
};

/// Exact binomial coefficient, nullopt on 64-bit overflow.
std::optional<std::uint64_t> binomial(std::uint64_t n, std::uint64_t k);

/// Draws so that at least one correct tuple pair is sampled with probability
/// delta: ceil(log(1 - delta) / log(1 - p)), p = C(., d) / (C(m, d) C(n, d))
/// and divided by d! in conservative mode.
std::size_t q_iterations_nd(std::size_t n, std::size_t m, std::size_t k, std::size_t d,
                            double delta, QBoundOptions options = {});

/// Ordered target and source tuples, matched positionally.
struct TuplePair {
  std::vector<std::size_t> targets;
  std::vector<std::size_t> sources;
};

/// Least-squares map sending X[sources] onto Y[targets]; nullopt when the
/// source tuple is degenerate.
std::optional<Coefficients> tuple_hypothesis(const PointSet& X, const PointSet& Y,
                                             const TuplePair& tuple, bool with_offset);

struct Schedule {
  std::vector<TuplePair> tuples;
  std::size_t degenerate = 0;  // draws rejected (randomized) or skipped (exhaustive)
};

/// Tuple size per hypothesis: d, or d + 1 with an offset.
std::size_t tuple_size(std::size_t d, bool with_offset);

/// Sequentially seeded draws of `q` non-degenerate tuple pairs. Degenerate
/// draws are redrawn; drawing stops early once q of them were rejected.
Schedule draw_schedule(const PointSet& X, const PointSet& Y, std::size_t q, std::uint64_t seed,
                       bool with_offset);

/// Every target subset, source subset and source ordering of size s, in
/// lexicographic order.
Schedule enumerate_schedule(std::size_t n, std::size_t m, std::size_t s);

/// Scores every tuple in `schedule`, refits the winner by least squares on
/// its matched inliers and restricts the assignment to those inliers.
ModelEstimate rrwoc_nd_from_schedule(const PointSet& X, const PointSet& Y, const ConfigND& config,
                                     const Schedule& schedule);

ModelEstimate rrwoc_nd_randomized(const PointSet& X, const PointSet& Y, const ConfigND& config);

/// Brute force over the full schedule; throws InstanceTooLarge above
/// config.max_hypotheses.
ModelEstimate rrwoc_nd_exhaustive(const PointSet& X, const PointSet& Y, const ConfigND& config);

}  // namespace rrwoc
