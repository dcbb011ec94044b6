#pragma once

#include <optional>
#include <vector>

#include "flataff/scalar.hpp"

namespace flataff {

/// Dense rectangular matrix over the scalar fraction field.
class ScalarMatrix {
public:
  ScalarMatrix() : rows_(0), cols_(0) {}
  ScalarMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}
  ScalarMatrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) throw DimensionMismatch("matrix entry count");
  }

  static ScalarMatrix identity(std::size_t n) {
    ScalarMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  bool operator==(const ScalarMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
  }
  bool operator!=(const ScalarMatrix& o) const { return !(*this == o); }

  friend ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shapes");
    ScalarMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a.at(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          r.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    return r;
  }
  friend ScalarMatrix operator+(const ScalarMatrix& a, const ScalarMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix sum shapes");
    ScalarMatrix r = a;
    for (std::size_t i = 0; i < r.entries_.size(); ++i) r.entries_[i] += b.entries_[i];
    return r;
  }
  friend ScalarMatrix operator-(const ScalarMatrix& a, const ScalarMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix diff shapes");
    ScalarMatrix r = a;
    for (std::size_t i = 0; i < r.entries_.size(); ++i) r.entries_[i] -= b.entries_[i];
    return r;
  }

  std::vector<Scalar> apply(const std::vector<Scalar>& v) const {
    if (v.size() != cols_) throw DimensionMismatch("matrix-vector shapes");
    std::vector<Scalar> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!at(i, j).is_zero()) out[i] += at(i, j) * v[j];
    return out;
  }

  ScalarMatrix transposed() const {
    ScalarMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

private:
  std::size_t rows_, cols_;
  std::vector<Scalar> entries_;
};

struct RrefResult {
  ScalarMatrix mat;
  std::vector<std::size_t> pivot_cols;
};

/// Reduced row echelon form. Pivot rows are chosen by lowest combined
/// num+den degree, ties broken in row-major order, so output is
/// deterministic and coefficient growth stays tame.
inline RrefResult rref(ScalarMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t best = m.rows();
    int best_deg = 0;
    for (std::size_t r = row; r < m.rows(); ++r) {
      if (m.at(r, col).is_zero()) continue;
      const int deg = m.at(r, col).complexity();
      if (best == m.rows() || deg < best_deg) {
        best = r;
        best_deg = deg;
      }
    }
    if (best == m.rows()) continue;
    if (best != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(row, j), m.at(best, j));
    const Scalar inv = Scalar(1) / m.at(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) = m.at(row, j) * inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m.at(r, col).is_zero()) continue;
      const Scalar f = m.at(r, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        m.at(r, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const ScalarMatrix& m) { return rref(m).pivot_cols.size(); }

/// Basis of {v : Mv = 0} from the reduced echelon form: one vector per free
/// column, unit entry at the free column, ordered by free column index.
inline std::vector<std::vector<Scalar>> nullspace(const ScalarMatrix& m) {
  const RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : r.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<Scalar> v(m.cols());
    v[free_col] = Scalar(1);
    for (std::size_t p = 0; p < r.pivot_cols.size(); ++p)
      v[r.pivot_cols[p]] = -r.mat.at(p, free_col);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline Scalar det(const ScalarMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant of non-square matrix");
  ScalarMatrix a = m;
  Scalar d(1);
  const std::size_t n = a.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = n;
    int best_deg = 0;
    for (std::size_t r = col; r < n; ++r) {
      if (a.at(r, col).is_zero()) continue;
      const int deg = a.at(r, col).complexity();
      if (best == n || deg < best_deg) {
        best = r;
        best_deg = deg;
      }
    }
    if (best == n) return Scalar(0);
    if (best != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(col, j), a.at(best, j));
      d = -d;
    }
    d *= a.at(col, col);
    const Scalar inv = Scalar(1) / a.at(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a.at(r, col).is_zero()) continue;
      const Scalar f = a.at(r, col) * inv;
      for (std::size_t j = col; j < n; ++j) a.at(r, j) -= f * a.at(col, j);
    }
  }
  return d;
}

inline std::optional<ScalarMatrix> inverse(const ScalarMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse of non-square matrix");
  const std::size_t n = m.rows();
  ScalarMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = Scalar(1);
  }
  const RrefResult r = rref(std::move(aug));
  if (r.pivot_cols.size() != n || r.pivot_cols.back() != n - 1) return std::nullopt;
  ScalarMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = r.mat.at(i, n + j);
  return inv;
}

} // namespace flataff
