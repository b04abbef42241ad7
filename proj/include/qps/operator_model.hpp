#pragma once

#include <stdexcept>
#include <vector>

#include "qps/matrix.hpp"

namespace qps {

// Truncated operator model on the half-line: an independent route used to
// cross-check the symbolic convolution.  chi_(m,S) acts on basis vectors by
// e_x -> e_{x+m} for x in S, so its N x N truncation has a 1 at (x+m, x).
using DenseMatrix = std::vector<std::vector<GaussianRational>>;

inline DenseMatrix dense_zero(int rows, int cols) {
  return DenseMatrix(rows, std::vector<GaussianRational>(cols));
}

inline DenseMatrix truncate_element(const AlgebraElement& f, int window) {
  if (f.ambient() != 1) throw std::invalid_argument("truncate_element: ambient must be 1");
  DenseMatrix m = dense_zero(window, window);
  for (const auto& comp : f.components()) {
    long long shift = comp.shift[0];
    for (const auto& [c, box] : comp.parts) {
      const ClopenSet& s = box[0];
      for (long long x : s.finite_part()) {
        if (x < window && x + shift >= 0 && x + shift < window)
          m[x + shift][x] += c;
      }
      if (s.has_tail()) {
        for (long long x = s.tail_start(); x < window; ++x)
          if (x + shift >= 0 && x + shift < window) m[x + shift][x] += c;
      }
    }
  }
  return m;
}

inline DenseMatrix truncate_matrix(const AlgMatrix& a, int window) {
  DenseMatrix m = dense_zero(a.rows() * window, a.cols() * window);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      DenseMatrix blk = truncate_element(a.at(i, j), window);
      for (int r = 0; r < window; ++r)
        for (int c = 0; c < window; ++c) m[i * window + r][j * window + c] = blk[r][c];
    }
  return m;
}

inline DenseMatrix dense_mul(const DenseMatrix& a, const DenseMatrix& b) {
  int n = (int)a.size(), k = (int)b.size(), m = (int)b[0].size();
  DenseMatrix r = dense_zero(n, m);
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < k; ++t) {
      if (a[i][t].is_zero()) continue;
      for (int j = 0; j < m; ++j) r[i][j] += a[i][t] * b[t][j];
    }
  return r;
}

// Exact rank by fraction-preserving Gaussian elimination.
inline int dense_rank(DenseMatrix m) {
  int rows = (int)m.size();
  if (rows == 0) return 0;
  int cols = (int)m[0].size();
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (!m[r][col].is_zero()) { pivot = r; break; }
    if (pivot < 0) continue;
    std::swap(m[pivot], m[rank]);
    GaussianRational inv_lead = gdiv(GaussianRational(1), m[rank][col]);
    for (int c = col; c < cols; ++c) m[rank][c] = m[rank][c] * inv_lead;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][col].is_zero()) continue;
      GaussianRational f = m[r][col];
      for (int c = col; c < cols; ++c) m[r][c] -= f * m[rank][c];
    }
    ++rank;
  }
  return rank;
}

inline GaussianRational dense_trace(const DenseMatrix& m) {
  GaussianRational t;
  for (size_t i = 0; i < m.size(); ++i) t += m[i][i];
  return t;
}

}  // namespace qps
