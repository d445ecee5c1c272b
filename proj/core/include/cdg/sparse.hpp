#pragma once

#include "cdg/parallel.hpp"

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace cdg {

/// Compressed sparse rows with sorted column indices.
struct CsrMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::int64_t> row_ptr;
  std::vector<int> col_idx;
  std::vector<double> values;

  std::int64_t nonzeros() const { return static_cast<std::int64_t>(values.size()); }

  /// Position of (i, j) in `values`, or -1 when outside the pattern.
  std::int64_t find(int i, int j) const;
  double coeff(int i, int j) const;

  void multiply(const Eigen::VectorXd& x, Eigen::VectorXd& y,
                const ExecutionPolicy& policy = ExecutionPolicy::sequential()) const;
  Eigen::VectorXd diagonal() const;

  /// max |A_ij - A_ji| over the pattern; the pattern itself must be symmetric.
  double max_asymmetry() const;

  /// Coordinate text: `row col value` per line, 0-based, 17 significant digits.
  void write_coordinate(std::ostream& out) const;

  /// Builds a CSR matrix from (row, col, value) triplets; duplicates are summed in input order.
  static CsrMatrix from_triplets(int rows, int cols, const std::vector<Eigen::Triplet<double>>& triplets);
};

}  // namespace cdg
