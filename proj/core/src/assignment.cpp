#include "rrwoc/assignment.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "rrwoc/error.hpp"

namespace rrwoc {
namespace {

// Solves for rows <= cols. Returns col_of_row (0-based).
std::vector<std::size_t> solve_wide(const Eigen::MatrixXd& a) {
  const std::size_t n = static_cast<std::size_t>(a.rows());
  const std::size_t m = static_cast<std::size_t>(a.cols());
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // 1-based with sentinel column 0, as in the classic formulation.
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0), minv(m + 1);
  std::vector<std::size_t> row_of_col(m + 1, 0), way(m + 1, 0);
  std::vector<char> used(m + 1);

  for (std::size_t i = 1; i <= n; ++i) {
    row_of_col[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = row_of_col[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = a(static_cast<Eigen::Index>(i0 - 1), static_cast<Eigen::Index>(j - 1)) -
                           u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[row_of_col[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of_col[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      row_of_col[j0] = row_of_col[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::size_t> col_of_row(n, 0);
  for (std::size_t j = 1; j <= m; ++j) {
    if (row_of_col[j] != 0) col_of_row[row_of_col[j] - 1] = j - 1;
  }
  return col_of_row;
}

}  // namespace

CostMatrix::CostMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.cols() < 1) {
    throw Error(ErrorCode::InvalidInput, "cost matrix must be at least 1 x 1");
  }
  if (!entries_.allFinite()) throw Error(ErrorCode::InvalidInput, "cost matrix has non-finite entries");
}

AssignmentResult linear_assignment(const CostMatrix& cost) {
  const Eigen::MatrixXd& a = cost.entries();
  const std::size_t n = cost.n_rows();
  const std::size_t m = cost.m_cols();

  std::vector<MatchedPair> pairs;
  pairs.reserve(std::min(n, m));
  if (n <= m) {
    const auto col_of_row = solve_wide(a);
    for (std::size_t r = 0; r < n; ++r) pairs.push_back({r, col_of_row[r]});
  } else {
    const Eigen::MatrixXd at = a.transpose();
    const auto row_of_col = solve_wide(at);
    for (std::size_t c = 0; c < m; ++c) pairs.push_back({row_of_col[c], c});
  }

  Assignment assignment(n, m, std::move(pairs));
  double total = 0.0;
  for (const auto& p : assignment.pairs()) {
    total += a(static_cast<Eigen::Index>(p.target), static_cast<Eigen::Index>(p.source));
  }
  return {std::move(assignment), total};
}

}  // namespace rrwoc
