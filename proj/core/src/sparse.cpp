#include "cdg/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

namespace cdg {

std::int64_t CsrMatrix::find(int i, int j) const {
  const auto begin = col_idx.begin() + row_ptr[i];
  const auto end = col_idx.begin() + row_ptr[i + 1];
  const auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j) return -1;
  return it - col_idx.begin();
}

double CsrMatrix::coeff(int i, int j) const {
  const std::int64_t p = find(i, j);
  return p < 0 ? 0.0 : values[p];
}

void CsrMatrix::multiply(const Eigen::VectorXd& x, Eigen::VectorXd& y, const ExecutionPolicy& policy) const {
  y.resize(rows);
  parallel_for(policy, static_cast<std::size_t>(rows), 1024, [&](std::size_t r0, std::size_t r1) {
    for (std::size_t r = r0; r < r1; ++r) {
      double s = 0.0;
      for (std::int64_t p = row_ptr[r]; p < row_ptr[r + 1]; ++p) s += values[p] * x[col_idx[p]];
      y[static_cast<Eigen::Index>(r)] = s;
    }
  });
}

Eigen::VectorXd CsrMatrix::diagonal() const {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(rows);
  for (int i = 0; i < rows; ++i) d[i] = coeff(i, i);
  return d;
}

double CsrMatrix::max_asymmetry() const {
  double worst = 0.0;
  for (int i = 0; i < rows; ++i) {
    for (std::int64_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) {
      const int j = col_idx[p];
      const std::int64_t q = find(j, i);
      const double other = q < 0 ? 0.0 : values[q];
      worst = std::max(worst, std::abs(values[p] - other));
    }
  }
  return worst;
}

void CsrMatrix::write_coordinate(std::ostream& out) const {
  char buf[64];
  for (int i = 0; i < rows; ++i) {
    for (std::int64_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) {
      std::snprintf(buf, sizeof buf, "%.17g", values[p]);
      out << i << ' ' << col_idx[p] << ' ' << buf << '\n';
    }
  }
}

CsrMatrix CsrMatrix::from_triplets(int rows, int cols, const std::vector<Eigen::Triplet<double>>& triplets) {
  CsrMatrix a;
  a.rows = rows;
  a.cols = cols;
  // Stable sort keeps duplicate contributions in input order.
  std::vector<std::size_t> order(triplets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (triplets[x].row() != triplets[y].row()) return triplets[x].row() < triplets[y].row();
    return triplets[x].col() < triplets[y].col();
  });
  a.row_ptr.assign(static_cast<std::size_t>(rows) + 1, 0);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& t = triplets[order[k]];
    if (k > 0) {
      const auto& prev = triplets[order[k - 1]];
      if (prev.row() == t.row() && prev.col() == t.col()) {
        a.values.back() += t.value();
        continue;
      }
    }
    a.col_idx.push_back(t.col());
    a.values.push_back(t.value());
    ++a.row_ptr[t.row() + 1];
  }
  for (int i = 0; i < rows; ++i) a.row_ptr[i + 1] += a.row_ptr[i];
  return a;
}

}  // namespace cdg
