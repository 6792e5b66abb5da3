#include "rrwoc/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "rrwoc/assignment.hpp"
#include "rrwoc/error.hpp"
#include "rrwoc/linalg.hpp"
#include "rrwoc/parallel.hpp"

namespace rrwoc {
namespace {

// Whether `beta` could rank before `incumbent`, which holds an earlier
// schedule index. The in-margin pairs form a bipartite graph; a maximum
// matching over it caps the inlier count of any assignment. When the graph
// is itself a matching, the penalized assignment must use all of its edges,
// which fixes both the count and the inlier residual without solving it.
bool competes(const PointSet& X, const PointSet& Y, const Coefficients& beta,
              const MarginSpec& margin, AssignmentCost cost, const Hypothesis& incumbent) {
  const Eigen::MatrixXd mapped = mapped_points_transposed(X, beta);
  const Eigen::MatrixXd targets = Y.matrix().transpose();
  const Eigen::Index d = targets.rows();
  const std::size_t n = static_cast<std::size_t>(targets.cols());
  const std::size_t m = static_cast<std::size_t>(mapped.cols());
  const std::size_t need = incumbent.inliers.size();
  constexpr double kSlack = 1.0 + 1e-12;
  constexpr std::size_t kFree = static_cast<std::size_t>(-1);

  std::vector<std::size_t> edges;
  std::vector<double> edge_residual;
  std::vector<std::size_t> first(n + 1, 0);
  std::vector<std::size_t> target_of(m, kFree);
  std::vector<std::size_t> seen(m, kFree);
  std::vector<std::pair<std::size_t, std::size_t>> path;  // (target, edge cursor)
  bool simple = cost == AssignmentCost::MarginPenalized;

  // Kuhn's augmenting path search from target `root`, iterative.
  auto augment = [&](std::size_t root) {
    path.clear();
    path.emplace_back(root, first[root]);
    while (!path.empty()) {
      auto& [t, cursor] = path.back();
      if (cursor == first[t + 1]) {
        path.pop_back();
        continue;
      }
      const std::size_t p = edges[cursor++];
      if (seen[p] == root) continue;
      seen[p] = root;
      if (target_of[p] == kFree) {
        // Flip the path: each target on it takes the source it last tried.
        target_of[p] = t;
        for (std::size_t i = path.size() - 1; i-- > 0;) {
          target_of[edges[path[i].second - 1]] = path[i].first;
        }
        return true;
      }
      path.emplace_back(target_of[p], first[target_of[p]]);
    }
    return false;
  };

  std::size_t matched = 0;
  for (std::size_t q = 0; q < n; ++q) {
    const double nu = margin.at(q);
    const double nu_sq = nu * nu * kSlack;
    const double* y = targets.col(static_cast<Eigen::Index>(q)).data();
    for (std::size_t p = 0; p < m; ++p) {
      const double* x = mapped.col(static_cast<Eigen::Index>(p)).data();
      double sq = 0.0;
      for (Eigen::Index c = 0; c < d; ++c) {
        const double diff = x[c] - y[c];
        sq += diff * diff;
      }
      // Same arithmetic as the residual matrix, so the decision is exact.
      if (sq <= nu_sq && std::sqrt(sq) <= nu) {
        edges.push_back(p);
        edge_residual.push_back(std::sqrt(sq));
      }
    }
    first[q + 1] = edges.size();
    if (first[q + 1] - first[q] > 1) simple = false;
    if (first[q + 1] > first[q] && augment(q)) ++matched;
    if (matched > need) return true;
    // Remaining targets can add at most one each.
    if (matched + (n - q - 1) < need) return false;
  }
  if (matched < need) return false;
  // A graph is a matching exactly when all of its edges were matched.
  if (!simple || matched != edges.size()) return true;
  double inlier_residual = 0.0;
  for (double r : edge_residual) inlier_residual += r;
  return inlier_residual < incumbent.inlier_residual;
}

Hypothesis score(const Coefficients& beta, const Eigen::MatrixXd& residuals,
                 const MarginSpec& margin, AssignmentCost cost) {
  Eigen::MatrixXd lap_cost = residuals;
  if (cost == AssignmentCost::MarginPenalized) {
    const double min_side = static_cast<double>(std::min(residuals.rows(), residuals.cols()));
    const double penalty = 1.0 + min_side * residuals.maxCoeff();
    for (Eigen::Index q = 0; q < lap_cost.rows(); ++q) {
      const double nu = margin.at(static_cast<std::size_t>(q));
      for (Eigen::Index p = 0; p < lap_cost.cols(); ++p) {
        if (lap_cost(q, p) > nu) lap_cost(q, p) += penalty;
      }
    }
  }

  AssignmentResult matched = linear_assignment(CostMatrix(std::move(lap_cost)));
  Hypothesis h{beta, std::move(matched.assignment), {}, {}, 0.0};
  h.residuals.reserve(h.assignment.size());
  for (const auto& pair : h.assignment.pairs()) {
    const double r =
        residuals(static_cast<Eigen::Index>(pair.target), static_cast<Eigen::Index>(pair.source));
    h.residuals.push_back(r);
    if (r <= margin.at(pair.target)) {
      h.inliers.push_back(pair.target);
      h.inlier_residual += r;
    }
  }
  return h;
}

}  // namespace

Hypothesis evaluate_hypothesis(const PointSet& X, const PointSet& Y, const Coefficients& beta,
                               const MarginSpec& margin, AssignmentCost cost) {
  margin.check_extent(Y.count());
  return score(beta, residual_matrix(X, Y, beta), margin, cost);
}

std::optional<Hypothesis> evaluate_if_competitive(const PointSet& X, const PointSet& Y,
                                                  const Coefficients& beta,
                                                  const MarginSpec& margin, AssignmentCost cost,
                                                  const Hypothesis* incumbent) {
  margin.check_extent(Y.count());
  if (incumbent && !competes(X, Y, beta, margin, cost, *incumbent)) return std::nullopt;
  return score(beta, residual_matrix(X, Y, beta), margin, cost);
}

bool ranks_before(const Hypothesis& a, std::size_t index_a, const Hypothesis& b,
                  std::size_t index_b) {
  if (a.inliers.size() != b.inliers.size()) return a.inliers.size() > b.inliers.size();
  if (a.inlier_residual != b.inlier_residual) return a.inlier_residual < b.inlier_residual;
  return index_a < index_b;
}

std::optional<RankedHypothesis> search_hypotheses(const PointSet& X, const PointSet& Y,
                                                  const MarginSpec& margin, AssignmentCost cost,
                                                  std::size_t count,
                                                  const HypothesisSource& source,
                                                  unsigned threads) {
  margin.check_extent(Y.count());
  std::optional<RankedHypothesis> best;
  std::mutex best_mutex;

  parallel_chunks(count, resolve_threads(threads), [&](unsigned, std::size_t begin, std::size_t end) {
    std::optional<RankedHypothesis> local;
    for (std::size_t t = begin; t < end; ++t) {
      auto beta = source(t);
      if (!beta) continue;
      // Pruned hypotheses are strictly worse than `local`, so they can never
      // be the global winner; the reduction stays order independent.
      auto h = evaluate_if_competitive(X, Y, *beta, margin, cost,
                                       local ? &local->hypothesis : nullptr);
      if (!h) continue;
      if (!local || ranks_before(*h, t, local->hypothesis, local->index)) {
        local = RankedHypothesis{t, std::move(*h)};
      }
    }
    if (!local) return;
    std::lock_guard lock(best_mutex);
    if (!best || ranks_before(local->hypothesis, local->index, best->hypothesis, best->index)) {
      best = std::move(local);
    }
  });
  return best;
}

ModelEstimate finalize_estimate(const PointSet& X, const PointSet& Y, const MarginSpec& margin,
                                AssignmentCost cost, RankedHypothesis best, const Refit& refit,
                                bool restrict_to_inliers, SolveStats stats) {
  Hypothesis chosen = std::move(best.hypothesis);
  stats.winner = best.index;
  stats.refit_accepted = false;
  if (!chosen.inliers.empty()) {
    if (auto beta = refit(chosen)) {
      Hypothesis refitted = evaluate_hypothesis(X, Y, *beta, margin, cost);
      if (refitted.inliers.size() >= chosen.inliers.size()) {
        chosen = std::move(refitted);
        stats.refit_accepted = true;
      }
    }
  }

  Assignment assignment = chosen.assignment;
  std::vector<double> residuals = chosen.residuals;
  if (restrict_to_inliers) {
    assignment = chosen.assignment.restricted_to(chosen.inliers);
    residuals.clear();
    const auto& pairs = chosen.assignment.pairs();
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (std::binary_search(chosen.inliers.begin(), chosen.inliers.end(), pairs[i].target)) {
        residuals.push_back(chosen.residuals[i]);
      }
    }
  }

  const std::size_t count = chosen.inliers.size();
  return ModelEstimate{std::move(chosen.beta), std::move(assignment), std::move(chosen.inliers),
                       std::move(residuals), count, stats};
}

}  // namespace rrwoc
