#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rrwoc/hypothesis.hpp"
#include "rrwoc/types.hpp"

namespace rrwoc {

/// Covariates with |x| below this are skipped as hypothesis denominators.
inline constexpr double kZeroCovariate = 1e-12;

struct Config1D {
  MarginSpec margin = MarginSpec::scalar(1e-9);
  double delta = 0.9;                   // desired success probability (randomized)
  std::optional<std::size_t> k_hint;    // outliers in y; only sizes q
  std::uint64_t seed = 0;
  unsigned threads = 1;                 // 0 = hardware concurrency
  AssignmentCost cost = AssignmentCost::MarginPenalized;
  std::size_t max_iterations_cap = 10'000'000;
};

/// Univariate normal equation over the matched pairs: sum(y x) / sum(x^2).
double ols_1d(std::span<const double> x, std::span<const double> y, const Assignment& assignment);

struct MomentsFit {
  double beta = 0.0;
  Assignment assignment;
};

/// Outlier-free, noiseless RWOC: beta from the ratio of sums, correspondence
/// by matching order statistics of y and x * beta.
MomentsFit rwoc_1d_moments(std::span<const double> x, std::span<const double> y);

/// Every (target i, source j) pair proposes beta = y_i / x_j; the proposal
/// with the most margin inliers wins and is refit by ols_1d on its inliers.
ModelEstimate rrwoc_1d_exhaustive(std::span<const double> x, std::span<const double> y,
                                  const Config1D& config);

/// Same hypothesis body over q uniformly drawn pairs, q from q_iterations_1d.
ModelEstimate rrwoc_1d_randomized(std::span<const double> x, std::span<const double> y,
                                  const Config1D& config);

/// ceil(log(1 - delta) / log(1 - (n - k) / (m n))), at least 1.
std::size_t q_iterations_1d(std::size_t n, std::size_t m, std::size_t k, double delta);

/// Outlier count assumed when no hint is given: floor(n/2) - 1, clamped at 0.
std::size_t default_k_hint(std::size_t n);

/// The (target, source) pairs the randomized solver evaluates for `seed`.
std::vector<std::pair<std::size_t, std::size_t>> draw_pairs_1d(std::size_t n, std::size_t m,
                                                               std::size_t q, std::uint64_t seed);

/// Half the smallest gap between distinct mapped covariates, 0.5 * min |(x_l - x_k) beta|.
/// Needs the true coefficient, so it is only useful for experiments and tests.
double oracle_margin_1d(std::span<const double> x, double beta_true);

}  // namespace rrwoc
