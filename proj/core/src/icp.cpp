#include "rrwoc/icp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rrwoc/error.hpp"
#include "rrwoc/linalg.hpp"
#include "rrwoc/regressnd.hpp"
#include "rrwoc/simulate.hpp"

namespace rrwoc {
namespace {

struct NearestMatch {
  std::size_t target;
  std::size_t source;
  double residual;
};

// Nearest mapped source for every target; ties go to the lower source index.
std::vector<NearestMatch> match_nearest(const PointSet& X, const PointSet& Y,
                                        const Coefficients& beta) {
  const Eigen::MatrixXd dist = residual_matrix(X, Y, beta);
  std::vector<NearestMatch> out(Y.count());
  for (Eigen::Index q = 0; q < dist.rows(); ++q) {
    Eigen::Index best = 0;
    for (Eigen::Index p = 1; p < dist.cols(); ++p) {
      if (dist(q, p) < dist(q, best)) best = p;
    }
    out[static_cast<std::size_t>(q)] = {static_cast<std::size_t>(q), static_cast<std::size_t>(best),
                                        dist(q, best)};
  }
  return out;
}

void sort_by_residual(std::vector<NearestMatch>& matches) {
  std::sort(matches.begin(), matches.end(), [](const NearestMatch& a, const NearestMatch& b) {
    if (a.residual != b.residual) return a.residual < b.residual;
    return a.target < b.target;
  });
}

}  // namespace

const char* to_string(IcpStatus status) noexcept {
  switch (status) {
    case IcpStatus::Converged: return "converged";
    case IcpStatus::MaxIterations: return "max_iterations";
    case IcpStatus::Degenerate: return "degenerate";
  }
  return "unknown";
}

IcpResult trimmed_icp(const PointSet& X, const PointSet& Y, const IcpConfig& config) {
  if (X.dim() != Y.dim()) throw Error(ErrorCode::DimensionMismatch, "source and target dimensions differ");
  if (!(config.trim_fraction >= 0.0 && config.trim_fraction < 1.0)) {
    throw Error(ErrorCode::InvalidParams, "trim fraction must lie in [0, 1)");
  }
  if (config.max_iters < 1) throw Error(ErrorCode::InvalidParams, "max_iters must be >= 1");
  if (!(config.tol > 0.0)) throw Error(ErrorCode::InvalidParams, "tolerance must be positive");
  config.margin.check_extent(Y.count());

  const std::size_t n = Y.count();
  const auto kept = static_cast<std::size_t>(
      std::ceil((1.0 - config.trim_fraction) * static_cast<double>(n) - 1e-12));
  const std::size_t s = tuple_size(X.dim(), config.with_offset);
  if (kept < s) throw Error(ErrorCode::InvalidParams, "too few kept matches to fit the map");

  Coefficients beta = config.init ? *config.init
                                  : random_rotation_scaled(X.dim(), ScaleRange{1.0, 1.0}, config.seed);
  if (beta.dim() != X.dim()) throw Error(ErrorCode::DimensionMismatch, "initial map has wrong dimension");
  if (config.with_offset && !beta.has_offset()) {
    beta = Coefficients(beta.linear(), Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(X.dim())));
  }

  IcpResult result{ModelEstimate{beta, Assignment(n, X.count(), {}), {}, {}, 0, {}},
                   IcpStatus::MaxIterations, {}};
  std::size_t iterations = 0;
  for (std::size_t iter = 1; iter <= config.max_iters; ++iter) {
    auto matches = match_nearest(X, Y, beta);
    sort_by_residual(matches);
    matches.resize(kept);
    double objective = 0.0;
    std::vector<std::size_t> targets, sources;
    for (const auto& mt : matches) {
      objective += mt.residual * mt.residual;
      targets.push_back(mt.target);
      sources.push_back(mt.source);
    }
    result.objective.push_back(objective);

    auto next = try_solve_lstsq(X.rows(sources), Y.rows(targets), config.with_offset);
    if (!next) {
      result.status = IcpStatus::Degenerate;
      break;
    }
    iterations = iter;
    const double change = frobenius_distance(*next, beta);
    beta = *std::move(next);
    if (change < config.tol) {
      result.status = IcpStatus::Converged;
      break;
    }
  }

  // Final correspondence: nearest matches, one target per source (closest wins).
  auto matches = match_nearest(X, Y, beta);
  double objective = 0.0;
  {
    auto trimmed = matches;
    sort_by_residual(trimmed);
    for (std::size_t i = 0; i < kept; ++i) objective += trimmed[i].residual * trimmed[i].residual;
  }
  if (result.status != IcpStatus::Degenerate) result.objective.push_back(objective);

  sort_by_residual(matches);
  std::vector<char> source_taken(X.count(), 0);
  std::vector<MatchedPair> pairs;
  for (const auto& mt : matches) {
    if (source_taken[mt.source]) continue;
    source_taken[mt.source] = 1;
    pairs.push_back({mt.target, mt.source});
  }
  Assignment assignment(n, X.count(), std::move(pairs));
  InlierSet inliers = count_inliers(X, Y, beta, assignment, config.margin);

  SolveStats stats;
  stats.iterations = iterations;
  const std::size_t count = inliers.count();
  result.estimate = ModelEstimate{std::move(beta), std::move(assignment), std::move(inliers.indices),
                                  std::move(inliers.residuals), count, stats};
  return result;
}

}  // namespace rrwoc
