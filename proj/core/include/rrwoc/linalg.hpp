#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <vector>

#include "rrwoc/types.hpp"

namespace rrwoc {

/// Smallest accepted ratio of smallest to largest singular value.
inline constexpr double kRankTolerance = 1e-8;

/// Least-squares coefficients minimizing ||A * beta - B||_F.
///
/// With `with_offset` the covariates are augmented by a column of ones and the
/// last row of the solution becomes the offset, so A needs k >= d + 1 rows.
/// Throws RankDeficient when the (augmented) covariates are numerically rank
/// deficient; callers drawing random tuples treat that as a skipped draw.
Coefficients solve_lstsq(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                         bool with_offset = false, double rank_tol = kRankTolerance);

/// Same as solve_lstsq but reports rank deficiency as nullopt.
std::optional<Coefficients> try_solve_lstsq(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                            bool with_offset = false,
                                            double rank_tol = kRankTolerance);

/// True when the (augmented) covariates pass the rank check of solve_lstsq.
bool well_conditioned(const Eigen::MatrixXd& A, bool with_offset = false,
                      double rank_tol = kRankTolerance);

/// (X * beta)^T: one mapped source per column.
Eigen::MatrixXd mapped_points_transposed(const PointSet& X, const Coefficients& beta);

/// Euclidean distance between two contiguous d-vectors; the one kernel behind
/// residual_matrix and count_inliers, so both agree bit for bit.
double point_distance(const double* a, const double* b, Eigen::Index d);

/// n x m matrix of Euclidean distances ||x_p * beta - y_q|| at (q, p).
Eigen::MatrixXd residual_matrix(const PointSet& X, const PointSet& Y, const Coefficients& beta);

struct InlierSet {
  std::vector<std::size_t> indices;  // sorted target indices
  std::vector<double> residuals;     // one per assignment pair, same order
  std::size_t count() const noexcept { return indices.size(); }
};

/// Matched targets whose residual under `beta` is within their margin.
InlierSet count_inliers(const PointSet& X, const PointSet& Y, const Coefficients& beta,
                        const Assignment& assignment, const MarginSpec& margin);

}  // namespace rrwoc
