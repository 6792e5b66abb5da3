#pragma once

#include <Eigen/Dense>

#include <cstddef>

#include "rrwoc/types.hpp"

namespace rrwoc {

/// Finite n x m cost matrix; row q is target q, column p is source p.
class CostMatrix {
 public:
  explicit CostMatrix(Eigen::MatrixXd entries);

  std::size_t n_rows() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  std::size_t m_cols() const noexcept { return static_cast<std::size_t>(entries_.cols()); }
  const Eigen::MatrixXd& entries() const noexcept { return entries_; }

 private:
  Eigen::MatrixXd entries_;
};

struct AssignmentResult {
  Assignment assignment;  // rows as targets, columns as sources
  double total_cost = 0.0;
};

/// Exact rectangular linear assignment.
///
/// Shortest augmenting paths with row/column potentials; rows are inserted in
/// index order and stop once min(n, m) pairs are matched, which costs
/// O(min(n,m)^2 * max(n,m)). Negative costs are fine. Among equal-cost
/// augmentations the lowest column index wins, so results are deterministic.
AssignmentResult linear_assignment(const CostMatrix& cost);

}  // namespace rrwoc
