#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "rrwoc/error.hpp"
#include "rrwoc/regressnd.hpp"
#include "rrwoc/simulate.hpp"

namespace rrwoc {
namespace {

bool next_combination(std::vector<std::size_t>& combo, std::size_t n) {
  const std::size_t s = combo.size();
  for (std::size_t i = s; i-- > 0;) {
    if (combo[i] < n - s + i) {
      ++combo[i];
      for (std::size_t j = i + 1; j < s; ++j) combo[j] = combo[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

ConvexHull ConvexHull::build(const Eigen::MatrixXd& points, std::size_t max_subsets) {
  const auto n_points = static_cast<std::size_t>(points.rows());
  const auto d = static_cast<std::size_t>(points.cols());
  if (d == 0 || n_points < d + 1) {
    throw Error(ErrorCode::DegenerateHull, "hull needs at least d + 1 points");
  }
  if (!points.allFinite()) throw Error(ErrorCode::InvalidInput, "hull points are not finite");

  ConvexHull hull;
  hull.points_ = points;
  hull.interior_ = points.colwise().mean();
  hull.lo_ = points.colwise().minCoeff();
  hull.hi_ = points.colwise().maxCoeff();

  const Eigen::MatrixXd centered = points.rowwise() - hull.interior_;
  Eigen::JacobiSVD<Eigen::MatrixXd> spread(centered);
  const auto& sv = spread.singularValues();
  if (!(sv(0) > 0.0) || sv(sv.size() - 1) < 1e-10 * sv(0)) {
    throw Error(ErrorCode::DegenerateHull, "points are affinely degenerate");
  }
  const double extent = (hull.hi_ - hull.lo_).norm();
  hull.tolerance_ = 1e-10 * std::max(1.0, extent);

  const auto subsets = binomial(n_points, d);
  if (!subsets || *subsets > max_subsets) {
    throw Error(ErrorCode::InstanceTooLarge, "too many point subsets for hull facet search");
  }

  std::vector<std::size_t> combo(d);
  std::iota(combo.begin(), combo.end(), std::size_t{0});
  do {
    Eigen::RowVectorXd normal(static_cast<Eigen::Index>(d));
    const Eigen::RowVectorXd base = points.row(static_cast<Eigen::Index>(combo[0]));
    if (d == 1) {
      normal(0) = 1.0;
    } else {
      Eigen::MatrixXd edges(static_cast<Eigen::Index>(d - 1), static_cast<Eigen::Index>(d));
      for (std::size_t i = 1; i < d; ++i) {
        edges.row(static_cast<Eigen::Index>(i - 1)) =
            points.row(static_cast<Eigen::Index>(combo[i])) - base;
      }
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(edges, Eigen::ComputeFullV);
      const auto& esv = svd.singularValues();
      if (!(esv(0) > 0.0) || esv(esv.size() - 1) < 1e-10 * esv(0)) continue;
      normal = svd.matrixV().col(static_cast<Eigen::Index>(d - 1)).transpose();
      normal.normalize();
    }
    const double offset = normal.dot(base);

    std::size_t above = 0, below = 0;
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      const double s = normal.dot(points.row(i)) - offset;
      if (s > hull.tolerance_) ++above;
      if (s < -hull.tolerance_) ++below;
    }
    if (above != 0 && below != 0) continue;
    const std::size_t on_plane = n_points - above - below;
    if (on_plane > d) hull.simplicial_ = false;
    if (above == 0) {
      hull.halfspaces_.push_back({normal, offset});
    } else {
      hull.halfspaces_.push_back({-normal, -offset});
    }
    hull.facets_.push_back(combo);
  } while (next_combination(combo, n_points));

  if (hull.simplicial_) {
    double total = 0.0;
    const double d_factorial = std::tgamma(static_cast<double>(d) + 1.0);
    for (const auto& facet : hull.facets_) {
      Eigen::MatrixXd cone(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
      for (std::size_t i = 0; i < d; ++i) {
        cone.row(static_cast<Eigen::Index>(i)) =
            points.row(static_cast<Eigen::Index>(facet[i])) - hull.interior_;
      }
      total += std::abs(cone.determinant()) / d_factorial;
      hull.cone_cdf_.push_back(total);
    }
  }
  return hull;
}

bool ConvexHull::contains(const Eigen::RowVectorXd& p) const {
  if (static_cast<std::size_t>(p.size()) != dim()) {
    throw Error(ErrorCode::DimensionMismatch, "point dimension differs from hull");
  }
  return std::all_of(halfspaces_.begin(), halfspaces_.end(), [&](const Halfspace& h) {
    return h.normal.dot(p) - h.offset <= tolerance_;
  });
}

Eigen::RowVectorXd ConvexHull::sample_rejection(Rng& rng, std::size_t& attempts) const {
  Eigen::RowVectorXd p(static_cast<Eigen::Index>(dim()));
  for (;;) {
    ++attempts;
    for (Eigen::Index c = 0; c < p.size(); ++c) {
      std::uniform_real_distribution<double> coord(lo_(c), hi_(c));
      p(c) = coord(rng);
    }
    if (contains(p)) return p;
  }
}

Eigen::RowVectorXd ConvexHull::sample_simplex(Rng& rng) const {
  if (!simplicial_ || cone_cdf_.empty()) {
    throw Error(ErrorCode::InvalidParams, "hull facets are not simplices");
  }
  std::uniform_real_distribution<double> pick(0.0, cone_cdf_.back());
  const double u = pick(rng);
  const auto it = std::upper_bound(cone_cdf_.begin(), cone_cdf_.end(), u);
  const auto facet_index =
      std::min<std::size_t>(static_cast<std::size_t>(it - cone_cdf_.begin()), facets_.size() - 1);
  const auto& facet = facets_[facet_index];

  // Flat Dirichlet weights over the cone's d + 1 vertices.
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(dim() + 1);
  for (auto& wi : w) wi = expo(rng);
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);

  Eigen::RowVectorXd p = (w[0] / sum) * interior_;
  for (std::size_t i = 0; i < facet.size(); ++i) {
    p += (w[i + 1] / sum) * points_.row(static_cast<Eigen::Index>(facet[i]));
  }
  return p;
}

Eigen::MatrixXd sample_in_hull(const PointSet& points, std::size_t count, std::uint64_t seed,
                               HullSampling method) {
  const auto d = static_cast<Eigen::Index>(points.dim());
  Eigen::MatrixXd out(static_cast<Eigen::Index>(count), d);
  if (count == 0) return out;

  const ConvexHull hull = ConvexHull::build(points.matrix());
  Rng rng(seed);
  std::size_t attempts = 0;
  bool use_simplex = method == HullSampling::Simplex;
  for (std::size_t i = 0; i < count; ++i) {
    if (method == HullSampling::Auto && !use_simplex && hull.simplicial() && attempts >= 1000 &&
        static_cast<double>(i) < 0.01 * static_cast<double>(attempts)) {
      use_simplex = true;
    }
    out.row(static_cast<Eigen::Index>(i)) =
        use_simplex ? hull.sample_simplex(rng) : hull.sample_rejection(rng, attempts);
  }
  return out;
}

}  // namespace rrwoc
