#include "rrwoc/regress1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "iteration_bound.hpp"
#include "rrwoc/error.hpp"
#include "rrwoc/rng.hpp"

namespace rrwoc {
namespace {

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw Error(ErrorCode::InvalidParams, "delta must lie in (0, 1)");
  }
}

Refit ols_refit(std::span<const double> x, std::span<const double> y) {
  return [x, y](const Hypothesis& h) -> std::optional<Coefficients> {
    const Assignment inlier_pairs = h.assignment.restricted_to(h.inliers);
    try {
      return Coefficients::scalar(ols_1d(x, y, inlier_pairs));
    } catch (const Error&) {
      return std::nullopt;
    }
  };
}

HypothesisSource pair_source(std::span<const double> x, std::span<const double> y,
                             std::vector<std::pair<std::size_t, std::size_t>> pairs) {
  return [x, y, pairs = std::move(pairs)](std::size_t t) -> std::optional<Coefficients> {
    const auto [i, j] = pairs[t];
    if (std::abs(x[j]) < kZeroCovariate) return std::nullopt;
    return Coefficients::scalar(y[i] / x[j]);
  };
}

ModelEstimate run_pairs(std::span<const double> x, std::span<const double> y,
                        const Config1D& config,
                        std::vector<std::pair<std::size_t, std::size_t>> pairs) {
  const PointSet X = PointSet::from_values(x);
  const PointSet Y = PointSet::from_values(y);
  config.margin.check_extent(Y.count());

  SolveStats stats;
  stats.iterations = pairs.size();
  for (const auto& pr : pairs) {
    if (std::abs(x[pr.second]) < kZeroCovariate) ++stats.degenerate;
  }

  const std::size_t count = pairs.size();
  auto best = search_hypotheses(X, Y, config.margin, config.cost, count,
                                pair_source(x, y, std::move(pairs)), config.threads);
  if (!best) throw Error(ErrorCode::NoValidHypothesis, "every candidate pair has x = 0");
  return finalize_estimate(X, Y, config.margin, config.cost, std::move(*best), ols_refit(x, y),
                           false, stats);
}

}  // namespace

double ols_1d(std::span<const double> x, std::span<const double> y, const Assignment& assignment) {
  if (assignment.size() == 0) {
    throw Error(ErrorCode::DegenerateCovariates, "no matched pairs to regress on");
  }
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& pair : assignment.pairs()) {
    if (pair.target >= y.size() || pair.source >= x.size()) {
      throw Error(ErrorCode::DimensionMismatch, "assignment index outside the data");
    }
    sxy += y[pair.target] * x[pair.source];
    sxx += x[pair.source] * x[pair.source];
  }
  if (!(sxx > 0.0)) throw Error(ErrorCode::DegenerateCovariates, "all matched covariates are zero");
  return sxy / sxx;
}

MomentsFit rwoc_1d_moments(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.empty()) {
    throw Error(ErrorCode::InvalidParams, "moment matching needs equally sized non-empty sets");
  }
  const double sx = std::accumulate(x.begin(), x.end(), 0.0);
  const double sy = std::accumulate(y.begin(), y.end(), 0.0);
  if (sx == 0.0) throw Error(ErrorCode::ZeroMomentSum, "covariates sum to zero");
  const double beta = sy / sx;

  const std::size_t n = x.size();
  std::vector<std::size_t> y_order(n), x_order(n);
  std::iota(y_order.begin(), y_order.end(), std::size_t{0});
  std::iota(x_order.begin(), x_order.end(), std::size_t{0});
  std::stable_sort(y_order.begin(), y_order.end(),
                   [&](std::size_t a, std::size_t b) { return y[a] < y[b]; });
  std::stable_sort(x_order.begin(), x_order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] * beta < x[b] * beta; });

  std::vector<MatchedPair> pairs(n);
  for (std::size_t r = 0; r < n; ++r) pairs[r] = {y_order[r], x_order[r]};
  return {beta, Assignment(n, n, std::move(pairs))};
}

ModelEstimate rrwoc_1d_exhaustive(std::span<const double> x, std::span<const double> y,
                                  const Config1D& config) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(x.size() * y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) pairs.emplace_back(i, j);
  }
  return run_pairs(x, y, config, std::move(pairs));
}

ModelEstimate rrwoc_1d_randomized(std::span<const double> x, std::span<const double> y,
                                  const Config1D& config) {
  if (x.empty() || y.empty()) throw Error(ErrorCode::InvalidInput, "empty point set");
  const std::size_t k = config.k_hint.value_or(default_k_hint(y.size()));
  const std::size_t q = q_iterations_1d(y.size(), x.size(), k, config.delta);
  if (q > config.max_iterations_cap) {
    throw Error(ErrorCode::IterationCapExceeded,
                "iteration bound " + std::to_string(q) + " exceeds cap " +
                    std::to_string(config.max_iterations_cap));
  }
  return run_pairs(x, y, config, draw_pairs_1d(y.size(), x.size(), q, config.seed));
}

std::size_t q_iterations_1d(std::size_t n, std::size_t m, std::size_t k, double delta) {
  check_delta(delta);
  if (n == 0 || m == 0) throw Error(ErrorCode::InvalidParams, "n and m must be positive");
  if (k >= n) throw Error(ErrorCode::InvalidParams, "outlier count k must be below n");
  const double hit = static_cast<double>(n - k) / (static_cast<double>(n) * static_cast<double>(m));
  return detail::iterations_for_hit_probability(hit, delta);
}

std::size_t default_k_hint(std::size_t n) { return n / 2 >= 1 ? n / 2 - 1 : 0; }

std::vector<std::pair<std::size_t, std::size_t>> draw_pairs_1d(std::size_t n, std::size_t m,
                                                               std::size_t q, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(q);
  for (std::size_t t = 0; t < q; ++t) {
    const std::size_t i = uniform_index(rng, n);
    const std::size_t j = uniform_index(rng, m);
    pairs.emplace_back(i, j);
  }
  return pairs;
}

double oracle_margin_1d(std::span<const double> x, double beta_true) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < x.size(); ++l) {
    for (std::size_t k = l + 1; k < x.size(); ++k) {
      best = std::min(best, std::abs((x[l] - x[k]) * beta_true));
    }
  }
  return 0.5 * best;
}

}  // namespace rrwoc
