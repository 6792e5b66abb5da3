#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rrwoc/rng.hpp"
#include "rrwoc/types.hpp"

namespace rrwoc {

struct ScaleRange {
  double lo = 0.5;
  double hi = 1.5;
};

/// s * Q with Q the orthonormal factor of a QR-decomposed standard Gaussian
/// d x d matrix and s uniform in the range.
Coefficients random_rotation_scaled(std::size_t d, ScaleRange scale, std::uint64_t seed);
Coefficients random_rotation_scaled(std::size_t d, ScaleRange scale, Rng& rng);

/// Convex hull of a full-dimensional point cloud as an intersection of
/// supporting half-spaces, found by testing the hyperplane through every
/// d-subset of the points.
class ConvexHull {
 public:
  struct Halfspace {
    Eigen::RowVectorXd normal;  // unit length, pointing outward
    double offset = 0.0;        // normal . x <= offset inside
  };

  /// Throws DegenerateHull for fewer than d + 1 points or an affinely
  /// degenerate cloud, InstanceTooLarge when C(N, d) exceeds `max_subsets`.
  static ConvexHull build(const Eigen::MatrixXd& points, std::size_t max_subsets = 5'000'000);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(points_.cols()); }
  const std::vector<Halfspace>& halfspaces() const noexcept { return halfspaces_; }

  /// True when no facet has more than d points on it, so the facets are
  /// simplices and a cone decomposition from an interior point is exact.
  bool simplicial() const noexcept { return simplicial_; }

  bool contains(const Eigen::RowVectorXd& p) const;

  /// Rejection sampling from the bounding box.
  Eigen::RowVectorXd sample_rejection(Rng& rng, std::size_t& attempts) const;

  /// Volume-weighted pick of a cone simplex (interior point + facet), then a
  /// uniform point in it. Requires simplicial().
  Eigen::RowVectorXd sample_simplex(Rng& rng) const;

 private:
  ConvexHull() = default;

  Eigen::MatrixXd points_;
  Eigen::RowVectorXd lo_, hi_, interior_;
  double tolerance_ = 0.0;
  std::vector<Halfspace> halfspaces_;
  std::vector<std::vector<std::size_t>> facets_;
  std::vector<double> cone_cdf_;
  bool simplicial_ = true;
};

enum class HullSampling {
  Auto,       // rejection, switching to simplices when acceptance drops below 1%
  Rejection,
  Simplex,
};

/// `count` points uniform in the convex hull of `points` (count x d matrix).
Eigen::MatrixXd sample_in_hull(const PointSet& points, std::size_t count, std::uint64_t seed,
                               HullSampling method = HullSampling::Auto);

struct SimConfig {
  std::size_t d = 3;
  std::size_t m_source = 20;   // J
  std::size_t n_target = 20;
  std::size_t k_outliers = 0;
  double sigma = 0.0;          // inlier noise standard deviation
  ScaleRange scale;
  std::uint64_t seed = 0;
};

struct SimInstance {
  PointSet X;
  PointSet Y;
  Coefficients truth_beta;
  Assignment truth_assignment;             // inlier target -> generating source
  std::vector<std::size_t> truth_inliers;  // sorted
  std::vector<std::size_t> truth_outliers; // sorted
  double sigma = 0.0;
};

/// Standard-normal sources, n - k targets mapped from a random source subset
/// plus Gaussian noise, k outliers uniform in the hull of those targets, rows
/// of Y shuffled.
SimInstance generate_instance(const SimConfig& config);

}  // namespace rrwoc
