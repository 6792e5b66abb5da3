#pragma once

#include <Eigen/Dense>

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace rrwoc {

/// An ordered set of d-dimensional points stored one per row.
///
/// Holds both the source set X (m rows) and the target set Y (n rows).
/// Construction rejects empty sets, zero dimension and non-finite values;
/// the object is immutable afterwards.
class PointSet {
 public:
  explicit PointSet(Eigen::MatrixXd points);

  /// One-dimensional point set from a list of scalars.
  static PointSet from_values(std::span<const double> values);
  static PointSet from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t count() const noexcept { return static_cast<std::size_t>(points_.rows()); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(points_.cols()); }

  const Eigen::MatrixXd& matrix() const noexcept { return points_; }
  auto point(std::size_t i) const { return points_.row(static_cast<Eigen::Index>(i)); }

  /// Rows at `indices`, in the given order.
  Eigen::MatrixXd rows(std::span<const std::size_t> indices) const;

  /// Column 0 as a vector; only meaningful for 1-D sets.
  std::vector<double> values() const;

 private:
  Eigen::MatrixXd points_;
};

struct MatchedPair {
  std::size_t target = 0;
  std::size_t source = 0;

  friend auto operator<=>(const MatchedPair&, const MatchedPair&) = default;
};

/// Partial injective map from target indices to source indices.
///
/// Pairs are kept sorted by target index, so two assignments describing the
/// same map compare equal.
class Assignment {
 public:
  Assignment(std::size_t n_target, std::size_t m_source, std::vector<MatchedPair> pairs);

  static Assignment identity(std::size_t n);

  std::size_t n_target() const noexcept { return n_target_; }
  std::size_t m_source() const noexcept { return m_source_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  const std::vector<MatchedPair>& pairs() const noexcept { return pairs_; }

  std::optional<std::size_t> source_of(std::size_t target) const;
  std::optional<std::size_t> target_of(std::size_t source) const;

  /// Keeps only the pairs whose target is listed in `targets`.
  Assignment restricted_to(std::span<const std::size_t> targets) const;

  /// Same map viewed from the other side (sources become targets).
  Assignment inverse() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::size_t n_target_;
  std::size_t m_source_;
  std::vector<MatchedPair> pairs_;
};

/// Regression coefficients: a d x d linear map applied on the right of row
/// vectors (y = x * beta), with an optional affine offset.
class Coefficients {
 public:
  explicit Coefficients(Eigen::MatrixXd linear,
                        std::optional<Eigen::RowVectorXd> offset = std::nullopt);

  static Coefficients identity(std::size_t d);
  static Coefficients scalar(double beta);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(linear_.rows()); }
  const Eigen::MatrixXd& linear() const noexcept { return linear_; }
  const std::optional<Eigen::RowVectorXd>& offset() const noexcept { return offset_; }
  bool has_offset() const noexcept { return offset_.has_value(); }

  /// Maps every row of `points` (k x d) through the model.
  Eigen::MatrixXd apply(const Eigen::MatrixXd& points) const;

 private:
  Eigen::MatrixXd linear_;
  std::optional<Eigen::RowVectorXd> offset_;
};

/// Frobenius norm of the difference, offsets included (absent offset = 0).
double frobenius_distance(const Coefficients& a, const Coefficients& b);

/// Inlier threshold: one value for every target or one value per target.
class MarginSpec {
 public:
  static MarginSpec scalar(double nu);
  static MarginSpec per_target(std::vector<double> nus);

  bool is_scalar() const noexcept { return std::holds_alternative<double>(value_); }
  double at(std::size_t target) const;

  /// Throws DimensionMismatch when a per-target spec does not cover n_target points.
  void check_extent(std::size_t n_target) const;

  MarginSpec scaled(double factor) const;

 private:
  explicit MarginSpec(std::variant<double, std::vector<double>> value);

  std::variant<double, std::vector<double>> value_;
};

struct SolveStats {
  std::size_t iterations = 0;   // hypotheses scheduled (q, or the exhaustive count)
  std::size_t degenerate = 0;   // draws skipped or redrawn because beta was undefined
  std::size_t winner = 0;       // schedule index of the winning hypothesis
  bool refit_accepted = false;  // final refit kept (it did not lose inliers)
};

/// Result of a solver: coefficients, correspondence and the inlier set.
///
/// `residuals[i]` belongs to `assignment.pairs()[i]`; `inliers` is sorted and
/// holds exactly the matched targets whose residual is within the margin.
struct ModelEstimate {
  Coefficients beta;
  Assignment assignment;
  std::vector<std::size_t> inliers;
  std::vector<double> residuals;
  std::size_t inlier_count = 0;
  SolveStats stats;
};

}  // namespace rrwoc
