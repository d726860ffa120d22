#pragma once

// Dense matrices over exact rings, and the exact rational linear algebra
// (rank, null spaces, subspace sums and intersections) that the flag-variety
// code is built on.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "ksorbits/error.hpp"

namespace ksorbits {

using Rational = mpq_class;
using Integer = mpz_class;
using QVector = std::vector<Rational>;

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw UsageError("ragged matrix literal");
      for (long x : row) data_.emplace_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_columns(std::span<const std::vector<T>> cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw UsageError("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  void set_column(std::size_t j, const std::vector<T>& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }
  std::vector<std::vector<T>> columns() const {
    std::vector<std::vector<T>> out;
    out.reserve(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw UsageError("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    if (a.cols_ != v.size()) throw UsageError("matrix-vector shape mismatch");
    std::vector<T> out(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
    return out;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw UsageError("matrix sum shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw UsageError("matrix difference shape mismatch");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend Matrix operator*(const T& s, Matrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << '[';
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m(i, j);
      os << "]\n";
    }
    return os;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using ZMatrix = Matrix<Integer>;

inline QVector zero_vector(std::size_t n) { return QVector(n, Rational(0)); }

inline QVector unit_vector(std::size_t n, std::size_t i) {
  QVector v = zero_vector(n);
  v[i] = 1;
  return v;
}

inline QVector axpy(const Rational& a, const QVector& x, const QVector& y) {
  QVector out = y;
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += a * x[i];
  return out;
}

inline bool is_zero(const QVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> row_reduce(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(QMatrix m) { return row_reduce(m).size(); }

// Basis of {x : m x = 0}.
inline std::vector<QVector> nullspace(QMatrix m) {
  const auto pivots = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    QVector v = zero_vector(m.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Incrementally maintained echelon basis of a subspace of Q^n.
class SpanBuilder {
 public:
  explicit SpanBuilder(std::size_t ambient) : n_(ambient) {}

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return rows_.size(); }

  // Adds v; returns true iff v was outside the current span.
  bool add(const QVector& v) {
    QVector w = reduce(v);
    std::size_t p = 0;
    while (p < n_ && w[p] == 0) ++p;
    if (p == n_) return false;
    Rational inv = 1 / w[p];
    for (auto& x : w) x *= inv;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (rows_[k][p] == 0) continue;
      Rational f = rows_[k][p];
      for (std::size_t j = 0; j < n_; ++j) rows_[k][j] -= f * w[j];
    }
    rows_.push_back(std::move(w));
    pivots_.push_back(p);
    return true;
  }

  void add_all(std::span<const QVector> vs) {
    for (const auto& v : vs) add(v);
  }

  bool contains(const QVector& v) const { return is_zero(reduce(v)); }

  const std::vector<QVector>& basis() const { return rows_; }

  // Canonical remainder of v modulo the span (zero in every pivot column).
  QVector reduce(const QVector& v) const {
    if (v.size() != n_) throw UsageError("vector length does not match ambient dimension");
    QVector w = v;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Rational& c = w[pivots_[k]];
      if (c == 0) continue;
      Rational f = c;
      for (std::size_t j = 0; j < n_; ++j) w[j] -= f * rows_[k][j];
    }
    return w;
  }

 private:
  std::size_t n_;
  std::vector<QVector> rows_;
  std::vector<std::size_t> pivots_;
};

inline std::size_t span_dim(std::span<const QVector> vs, std::size_t ambient) {
  SpanBuilder b(ambient);
  b.add_all(vs);
  return b.dim();
}

// Basis of span(a) ∩ span(b). Inputs need not be independent.
inline std::vector<QVector> intersect(const std::vector<QVector>& a, const std::vector<QVector>& b,
                                      std::size_t ambient) {
  if (a.empty() || b.empty()) return {};
  QMatrix m(ambient, a.size() + b.size());
  for (std::size_t j = 0; j < a.size(); ++j)
    for (std::size_t i = 0; i < ambient; ++i) m(i, j) = a[j][i];
  for (std::size_t j = 0; j < b.size(); ++j)
    for (std::size_t i = 0; i < ambient; ++i) m(i, a.size() + j) = -b[j][i];
  SpanBuilder out(ambient);
  for (const auto& sol : nullspace(m)) {
    QVector v = zero_vector(ambient);
    for (std::size_t j = 0; j < a.size(); ++j)
      if (sol[j] != 0) v = axpy(sol[j], a[j], v);
    out.add(v);
  }
  return out.basis();
}

inline Rational determinant(QMatrix m) {
  if (m.rows() != m.cols()) throw UsageError("determinant of non-square matrix");
  Rational det = 1;
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

inline QMatrix inverse(const QMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw UsageError("inverse of non-square matrix");
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = row_reduce(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) throw DomainError("matrix is singular");
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

// exp(x) for nilpotent x, as the finite power series.
inline QMatrix nilpotent_exp(const QMatrix& x) {
  const std::size_t n = x.rows();
  QMatrix result = QMatrix::identity(n);
  QMatrix term = QMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    term = (Rational(1) / Rational(static_cast<unsigned long>(k))) * (term * x);
    if (term.is_zero()) return result;
    result = result + term;
  }
  if (!(term * x).is_zero()) throw DomainError("nilpotent_exp: matrix is not nilpotent");
  return result;
}

}  // namespace ksorbits
