#include "rrwoc/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rrwoc/error.hpp"

namespace rrwoc {

Coefficients random_rotation_scaled(std::size_t d, ScaleRange scale, Rng& rng) {
  if (d == 0) throw Error(ErrorCode::InvalidParams, "dimension must be >= 1");
  if (!(scale.lo > 0.0) || !(scale.hi >= scale.lo) || !std::isfinite(scale.hi)) {
    throw Error(ErrorCode::InvalidParams, "scale range must be positive and ordered");
  }
  const auto n = static_cast<Eigen::Index>(d);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd gaussian(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) gaussian(r, c) = gauss(rng);
  }
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian);
  Eigen::MatrixXd q = qr.householderQ();
  // Fix the column signs so that diag(R) > 0; this makes Q Haar distributed.
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < n; ++c) {
    if (r(c, c) < 0.0) q.col(c) = -q.col(c);
  }
  std::uniform_real_distribution<double> uniform(scale.lo, scale.hi);
  const double s = scale.hi > scale.lo ? uniform(rng) : scale.lo;
  return Coefficients(s * q);
}

Coefficients random_rotation_scaled(std::size_t d, ScaleRange scale, std::uint64_t seed) {
  Rng rng(seed);
  return random_rotation_scaled(d, scale, rng);
}

SimInstance generate_instance(const SimConfig& config) {
  const std::size_t d = config.d;
  const std::size_t m = config.m_source;
  const std::size_t n = config.n_target;
  const std::size_t k = config.k_outliers;
  if (d == 0 || n == 0 || m == 0) throw Error(ErrorCode::InvalidParams, "d, n and m must be positive");
  if (k >= n) throw Error(ErrorCode::InvalidParams, "outlier count k must be below n");
  if (m < n - k) {
    throw Error(ErrorCode::InvalidParams, "need at least n - k = " + std::to_string(n - k) +
                                              " source points");
  }
  if (!(config.sigma >= 0.0) || !std::isfinite(config.sigma)) {
    throw Error(ErrorCode::InvalidParams, "sigma must be finite and nonnegative");
  }

  Rng rng(config.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto dd = static_cast<Eigen::Index>(d);

  Eigen::MatrixXd x(static_cast<Eigen::Index>(m), dd);
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    for (Eigen::Index c = 0; c < dd; ++c) x(r, c) = gauss(rng);
  }
  Coefficients beta = random_rotation_scaled(d, config.scale, rng);

  const std::size_t n_in = n - k;
  const std::vector<std::size_t> sources = sample_without_replacement(rng, m, n_in);
  Eigen::MatrixXd inliers(static_cast<Eigen::Index>(n_in), dd);
  for (std::size_t r = 0; r < n_in; ++r) {
    inliers.row(static_cast<Eigen::Index>(r)) =
        x.row(static_cast<Eigen::Index>(sources[r])) * beta.linear();
  }
  if (config.sigma > 0.0) {
    for (Eigen::Index r = 0; r < inliers.rows(); ++r) {
      for (Eigen::Index c = 0; c < dd; ++c) inliers(r, c) += config.sigma * gauss(rng);
    }
  }

  Eigen::MatrixXd outliers(0, dd);
  if (k > 0) {
    const std::uint64_t hull_seed = rng();
    outliers = sample_in_hull(PointSet(inliers), k, hull_seed);
  }

  // position[r] is the shuffled row of generated row r (inliers first).
  const std::vector<std::size_t> position = sample_without_replacement(rng, n, n);
  Eigen::MatrixXd y(static_cast<Eigen::Index>(n), dd);
  std::vector<MatchedPair> truth;
  std::vector<std::size_t> inlier_rows, outlier_rows;
  for (std::size_t r = 0; r < n; ++r) {
    const auto dst = static_cast<Eigen::Index>(position[r]);
    if (r < n_in) {
      y.row(dst) = inliers.row(static_cast<Eigen::Index>(r));
      truth.push_back({position[r], sources[r]});
      inlier_rows.push_back(position[r]);
    } else {
      y.row(dst) = outliers.row(static_cast<Eigen::Index>(r - n_in));
      outlier_rows.push_back(position[r]);
    }
  }
  std::sort(inlier_rows.begin(), inlier_rows.end());
  std::sort(outlier_rows.begin(), outlier_rows.end());

  return SimInstance{PointSet(std::move(x)),
                     PointSet(std::move(y)),
                     std::move(beta),
                     Assignment(n, m, std::move(truth)),
                     std::move(inlier_rows),
                     std::move(outlier_rows),
                     config.sigma};
}

}  // namespace rrwoc
