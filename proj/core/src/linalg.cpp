#include "rrwoc/linalg.hpp"

#include <cmath>
#include <string>

#include "rrwoc/error.hpp"

namespace rrwoc {
namespace {

void check_dims(const PointSet& X, const PointSet& Y, const Coefficients& beta) {
  if (X.dim() != Y.dim() || X.dim() != beta.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "dimensions differ: X " + std::to_string(X.dim()) + ", Y " +
                    std::to_string(Y.dim()) + ", beta " + std::to_string(beta.dim()));
  }
}

Eigen::MatrixXd design_matrix(const Eigen::MatrixXd& A, bool with_offset) {
  const Eigen::Index d = A.cols();
  Eigen::MatrixXd design(A.rows(), with_offset ? d + 1 : d);
  design.leftCols(d) = A;
  if (with_offset) design.col(d).setOnes();
  return design;
}

bool acceptable(const Eigen::VectorXd& sv, double rank_tol) {
  return sv(0) > 0.0 && sv(sv.size() - 1) >= rank_tol * sv(0);
}

template <int N>
std::optional<Eigen::MatrixXd> square_solve(const Eigen::MatrixXd& design, const Eigen::MatrixXd& B,
                                            double rank_tol) {
  using Mat = Eigen::Matrix<double, N, N>;
  const Eigen::JacobiSVD<Mat> svd(Mat(design), Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (!acceptable(svd.singularValues(), rank_tol)) return std::nullopt;
  return Eigen::MatrixXd(svd.solve(B));
}

// Small square systems dominate tuple hypotheses, so they get fixed-size decompositions.
std::optional<Eigen::MatrixXd> solve_design(const Eigen::MatrixXd& design, const Eigen::MatrixXd& B,
                                            double rank_tol) {
  if (design.rows() == design.cols()) {
    switch (design.rows()) {
      case 2: return square_solve<2>(design, B, rank_tol);
      case 3: return square_solve<3>(design, B, rank_tol);
      case 4: return square_solve<4>(design, B, rank_tol);
      default: break;
    }
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (!acceptable(svd.singularValues(), rank_tol)) return std::nullopt;
  return Eigen::MatrixXd(svd.solve(B));
}

template <int N>
bool square_conditioned(const Eigen::MatrixXd& design, double rank_tol) {
  using Mat = Eigen::Matrix<double, N, N>;
  return acceptable(Eigen::JacobiSVD<Mat>(Mat(design)).singularValues(), rank_tol);
}

std::optional<Coefficients> lstsq_impl(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                       bool with_offset, double rank_tol) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "lstsq operands must both be k x d");
  }
  const Eigen::Index d = A.cols();
  if (A.rows() < (with_offset ? d + 1 : d)) {
    throw Error(ErrorCode::InvalidParams, "lstsq needs at least as many rows as unknowns");
  }
  const auto solution = solve_design(design_matrix(A, with_offset), B, rank_tol);
  if (!solution || !solution->allFinite()) return std::nullopt;
  if (!with_offset) return Coefficients(*solution);
  return Coefficients(solution->topRows(d), Eigen::RowVectorXd(solution->row(d)));
}


}  // namespace

double point_distance(const double* a, const double* b, Eigen::Index d) {
  double sq = 0.0;
  for (Eigen::Index c = 0; c < d; ++c) {
    const double diff = a[c] - b[c];
    sq += diff * diff;
  }
  return std::sqrt(sq);
}

bool well_conditioned(const Eigen::MatrixXd& A, bool with_offset, double rank_tol) {
  const Eigen::Index cols = with_offset ? A.cols() + 1 : A.cols();
  if (A.rows() < cols) return false;
  const Eigen::MatrixXd design = design_matrix(A, with_offset);
  if (design.rows() == cols) {
    switch (cols) {
      case 2: return square_conditioned<2>(design, rank_tol);
      case 3: return square_conditioned<3>(design, rank_tol);
      case 4: return square_conditioned<4>(design, rank_tol);
      default: break;
    }
  }
  return acceptable(Eigen::JacobiSVD<Eigen::MatrixXd>(design).singularValues(), rank_tol);
}


Coefficients solve_lstsq(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, bool with_offset,
                         double rank_tol) {
  auto beta = lstsq_impl(A, B, with_offset, rank_tol);
  if (!beta) throw Error(ErrorCode::RankDeficient, "covariates are numerically rank deficient");
  return *std::move(beta);
}

std::optional<Coefficients> try_solve_lstsq(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                            bool with_offset, double rank_tol) {
  return lstsq_impl(A, B, with_offset, rank_tol);
}

Eigen::MatrixXd mapped_points_transposed(const PointSet& X, const Coefficients& beta) {
  const Eigen::MatrixXd& x = X.matrix();
  const Eigen::MatrixXd& b = beta.linear();
  const Eigen::Index d = b.cols();
  Eigen::MatrixXd out(d, x.rows());
  for (Eigen::Index p = 0; p < x.rows(); ++p) {
    for (Eigen::Index c = 0; c < d; ++c) {
      double v = beta.offset() ? (*beta.offset())(c) : 0.0;
      for (Eigen::Index j = 0; j < d; ++j) v += x(p, j) * b(j, c);
      out(c, p) = v;
    }
  }
  return out;
}

Eigen::MatrixXd residual_matrix(const PointSet& X, const PointSet& Y, const Coefficients& beta) {
  check_dims(X, Y, beta);
  const Eigen::MatrixXd mapped = mapped_points_transposed(X, beta);
  const Eigen::MatrixXd targets = Y.matrix().transpose();
  const Eigen::Index d = targets.rows();
  const Eigen::Index n = targets.cols();
  const Eigen::Index m = mapped.cols();

  Eigen::MatrixXd out(n, m);
  for (Eigen::Index p = 0; p < m; ++p) {
    for (Eigen::Index q = 0; q < n; ++q) {
      out(q, p) = point_distance(mapped.col(p).data(), targets.col(q).data(), d);
    }
  }
  return out;
}

InlierSet count_inliers(const PointSet& X, const PointSet& Y, const Coefficients& beta,
                        const Assignment& assignment, const MarginSpec& margin) {
  check_dims(X, Y, beta);
  if (assignment.n_target() != Y.count() || assignment.m_source() != X.count()) {
    throw Error(ErrorCode::DimensionMismatch, "assignment extents differ from point sets");
  }
  margin.check_extent(Y.count());

  const Eigen::MatrixXd mapped = mapped_points_transposed(X, beta);
  const Eigen::MatrixXd targets = Y.matrix().transpose();
  InlierSet out;
  out.residuals.reserve(assignment.size());
  for (const auto& pair : assignment.pairs()) {
    const double r = point_distance(mapped.col(static_cast<Eigen::Index>(pair.source)).data(),
                                    targets.col(static_cast<Eigen::Index>(pair.target)).data(),
                                    targets.rows());
    out.residuals.push_back(r);
    if (r <= margin.at(pair.target)) out.indices.push_back(pair.target);
  }
  return out;
}

}  // namespace rrwoc
