#include "rrwoc/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rrwoc/error.hpp"

namespace rrwoc {

PointSet::PointSet(Eigen::MatrixXd points) : points_(std::move(points)) {
  if (points_.rows() < 1) throw Error(ErrorCode::InvalidInput, "point set is empty");
  if (points_.cols() < 1) throw Error(ErrorCode::InvalidInput, "point dimension must be >= 1");
  if (!points_.allFinite()) throw Error(ErrorCode::InvalidInput, "point set has non-finite values");
}

PointSet PointSet::from_values(std::span<const double> values) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(values.size()), 1);
  for (std::size_t i = 0; i < values.size(); ++i) m(static_cast<Eigen::Index>(i), 0) = values[i];
  return PointSet(std::move(m));
}

PointSet PointSet::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw Error(ErrorCode::InvalidInput, "point set is empty");
  const std::size_t d = rows.front().size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != d) {
      throw Error(ErrorCode::DimensionMismatch,
                  "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                      " values, expected " + std::to_string(d));
    }
    for (std::size_t j = 0; j < d; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return PointSet(std::move(m));
}

Eigen::MatrixXd PointSet::rows(std::span<const std::size_t> indices) const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(indices.size()), points_.cols());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= count()) throw Error(ErrorCode::InvalidParams, "row index out of range");
    out.row(static_cast<Eigen::Index>(i)) = points_.row(static_cast<Eigen::Index>(indices[i]));
  }
  return out;
}

std::vector<double> PointSet::values() const {
  std::vector<double> out(count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = points_(static_cast<Eigen::Index>(i), 0);
  return out;
}

Assignment::Assignment(std::size_t n_target, std::size_t m_source, std::vector<MatchedPair> pairs)
    : n_target_(n_target), m_source_(m_source), pairs_(std::move(pairs)) {
  if (pairs_.size() > std::min(n_target_, m_source_)) {
    throw Error(ErrorCode::InvalidInput, "assignment has more pairs than min(n, m)");
  }
  std::vector<bool> target_used(n_target_, false);
  std::vector<bool> source_used(m_source_, false);
  for (const auto& p : pairs_) {
    if (p.target >= n_target_ || p.source >= m_source_) {
      throw Error(ErrorCode::InvalidInput, "assignment index out of range");
    }
    if (target_used[p.target] || source_used[p.source]) {
      throw Error(ErrorCode::InvalidInput, "assignment is not injective");
    }
    target_used[p.target] = true;
    source_used[p.source] = true;
  }
  std::sort(pairs_.begin(), pairs_.end());
}

Assignment Assignment::identity(std::size_t n) {
  std::vector<MatchedPair> pairs(n);
  for (std::size_t i = 0; i < n; ++i) pairs[i] = {i, i};
  return Assignment(n, n, std::move(pairs));
}

std::optional<std::size_t> Assignment::source_of(std::size_t target) const {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), target,
                             [](const MatchedPair& p, std::size_t t) { return p.target < t; });
  if (it != pairs_.end() && it->target == target) return it->source;
  return std::nullopt;
}

std::optional<std::size_t> Assignment::target_of(std::size_t source) const {
  for (const auto& p : pairs_) {
    if (p.source == source) return p.target;
  }
  return std::nullopt;
}

Assignment Assignment::restricted_to(std::span<const std::size_t> targets) const {
  std::vector<bool> keep(n_target_, false);
  for (auto t : targets) {
    if (t < n_target_) keep[t] = true;
  }
  std::vector<MatchedPair> out;
  for (const auto& p : pairs_) {
    if (keep[p.target]) out.push_back(p);
  }
  return Assignment(n_target_, m_source_, std::move(out));
}

Assignment Assignment::inverse() const {
  std::vector<MatchedPair> out;
  out.reserve(pairs_.size());
  for (const auto& p : pairs_) out.push_back({p.source, p.target});
  return Assignment(m_source_, n_target_, std::move(out));
}

Coefficients::Coefficients(Eigen::MatrixXd linear, std::optional<Eigen::RowVectorXd> offset)
    : linear_(std::move(linear)), offset_(std::move(offset)) {
  if (linear_.rows() < 1 || linear_.rows() != linear_.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "coefficient matrix must be square and non-empty");
  }
  if (!linear_.allFinite()) throw Error(ErrorCode::InvalidInput, "coefficients are not finite");
  if (offset_) {
    if (offset_->size() != linear_.cols()) {
      throw Error(ErrorCode::DimensionMismatch, "offset length differs from coefficient dimension");
    }
    if (!offset_->allFinite()) throw Error(ErrorCode::InvalidInput, "offset is not finite");
  }
}

Coefficients Coefficients::identity(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  return Coefficients(Eigen::MatrixXd::Identity(n, n));
}

Coefficients Coefficients::scalar(double beta) {
  return Coefficients(Eigen::MatrixXd::Constant(1, 1, beta));
}

Eigen::MatrixXd Coefficients::apply(const Eigen::MatrixXd& points) const {
  if (points.cols() != linear_.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "points and coefficients differ in dimension");
  }
  Eigen::MatrixXd out = points * linear_;
  if (offset_) out.rowwise() += *offset_;
  return out;
}

double frobenius_distance(const Coefficients& a, const Coefficients& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "coefficients differ in dimension");
  }
  double sq = (a.linear() - b.linear()).squaredNorm();
  const auto d = static_cast<Eigen::Index>(a.dim());
  const Eigen::RowVectorXd oa = a.offset().value_or(Eigen::RowVectorXd::Zero(d));
  const Eigen::RowVectorXd ob = b.offset().value_or(Eigen::RowVectorXd::Zero(d));
  sq += (oa - ob).squaredNorm();
  return std::sqrt(sq);
}

MarginSpec::MarginSpec(std::variant<double, std::vector<double>> value) : value_(std::move(value)) {}

MarginSpec MarginSpec::scalar(double nu) {
  if (!(nu >= 0.0) || !std::isfinite(nu)) {
    throw Error(ErrorCode::InvalidParams, "margin must be finite and nonnegative");
  }
  return MarginSpec(nu);
}

MarginSpec MarginSpec::per_target(std::vector<double> nus) {
  for (double nu : nus) {
    if (!(nu >= 0.0) || !std::isfinite(nu)) {
      throw Error(ErrorCode::InvalidParams, "per-target margins must be finite and nonnegative");
    }
  }
  return MarginSpec(std::move(nus));
}

double MarginSpec::at(std::size_t target) const {
  if (const double* nu = std::get_if<double>(&value_)) return *nu;
  const auto& nus = std::get<std::vector<double>>(value_);
  if (target >= nus.size()) throw Error(ErrorCode::DimensionMismatch, "no margin for target index");
  return nus[target];
}

void MarginSpec::check_extent(std::size_t n_target) const {
  if (const auto* nus = std::get_if<std::vector<double>>(&value_); nus && nus->size() != n_target) {
    throw Error(ErrorCode::DimensionMismatch,
                "per-target margin count " + std::to_string(nus->size()) +
                    " differs from target count " + std::to_string(n_target));
  }
}

MarginSpec MarginSpec::scaled(double factor) const {
  const double f = std::abs(factor);
  if (const double* nu = std::get_if<double>(&value_)) return scalar(*nu * f);
  auto nus = std::get<std::vector<double>>(value_);
  for (auto& nu : nus) nu *= f;
  return per_target(std::move(nus));
}

}  // namespace rrwoc
