#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "rrwoc/types.hpp"

namespace rrwoc {

/// Cost handed to the linear assignment when scoring a hypothesis.
enum class AssignmentCost {
  /// Residual plus a penalty on pairs outside the margin. The penalty exceeds
  /// any achievable residual total, so the assignment first maximizes the
  /// number of within-margin pairs and then minimizes the summed residual.
  MarginPenalized,
  /// Plain Euclidean residual matrix.
  Residual,
};

/// One candidate model scored against the full point sets.
struct Hypothesis {
  Coefficients beta;
  Assignment assignment;
  std::vector<double> residuals;      // per assignment pair
  std::vector<std::size_t> inliers;   // sorted target indices
  double inlier_residual = 0.0;       // sum of residuals over inlier pairs
};

/// Residual matrix, linear assignment, then margin classification.
Hypothesis evaluate_hypothesis(const PointSet& X, const PointSet& Y, const Coefficients& beta,
                               const MarginSpec& margin, AssignmentCost cost);

/// Like evaluate_hypothesis, but returns nullopt without solving the
/// assignment when the result provably ranks after `incumbent`, taken to
/// hold an earlier schedule index. A null incumbent always evaluates.
std::optional<Hypothesis> evaluate_if_competitive(const PointSet& X, const PointSet& Y,
                                                  const Coefficients& beta,
                                                  const MarginSpec& margin, AssignmentCost cost,
                                                  const Hypothesis* incumbent);

/// Strict total order: more inliers, then smaller inlier residual, then
/// smaller schedule index.
bool ranks_before(const Hypothesis& a, std::size_t index_a, const Hypothesis& b,
                  std::size_t index_b);

struct RankedHypothesis {
  std::size_t index = 0;
  Hypothesis hypothesis;
};

/// Produces the coefficients for schedule slot t, or nullopt when undefined.
/// Called concurrently; must not mutate shared state.
using HypothesisSource = std::function<std::optional<Coefficients>(std::size_t)>;

/// Best hypothesis over schedule slots [0, count). The result does not
/// depend on `threads`.
std::optional<RankedHypothesis> search_hypotheses(const PointSet& X, const PointSet& Y,
                                                  const MarginSpec& margin, AssignmentCost cost,
                                                  std::size_t count,
                                                  const HypothesisSource& source,
                                                  unsigned threads);

using Refit = std::function<std::optional<Coefficients>(const Hypothesis&)>;

/// Refits on the winner's inliers, re-scores, keeps whichever of the two has
/// the larger inlier set (the refit on ties) and packages the estimate.
ModelEstimate finalize_estimate(const PointSet& X, const PointSet& Y, const MarginSpec& margin,
                                AssignmentCost cost, RankedHypothesis best, const Refit& refit,
                                bool restrict_to_inliers, SolveStats stats);

}  // namespace rrwoc
