#ifndef NEJAC_LINALG_HPP
#define NEJAC_LINALG_HPP

#include "nejac/rational.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace nejac {

// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (b(k, j) != 0) r(i, j) += aik * b(k, j);
      }
    return r;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend Matrix operator*(const T& s, Matrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    std::vector<T> r(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (v[j] != 0 && (*this)(i, j) != 0) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  T trace() const {
    T t(0);
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
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

  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;

Eigen::MatrixXcd to_eigen(const QMatrix& m);

// Sparse row: (column, value) pairs with strictly increasing columns, no zeros.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

// Incrementally maintained reduced row echelon form over Q.
// Pivots are only taken in columns < pivot_limit, so trailing columns can
// carry right-hand sides.
class RowEchelon {
 public:
  RowEchelon(std::size_t ncols, std::size_t pivot_limit);
  explicit RowEchelon(std::size_t ncols) : RowEchelon(ncols, ncols) {}

  // Reduces the row against the current basis and, if a pivot remains, adds it.
  // Returns false when the row reduced to something without an admissible pivot.
  bool insert(SparseRow row);
  // Reduction of a row against the current basis (no insertion).
  SparseRow reduce(SparseRow row) const;

  std::size_t rank() const { return rows_.size(); }
  std::size_t ncols() const { return ncols_; }
  const std::vector<std::size_t>& pivot_columns() const { return pivot_cols_; }
  const SparseRow& row_for_pivot(std::size_t col) const { return rows_.at(pivot_index_.at(col)); }
  bool is_pivot(std::size_t col) const { return pivot_index_[col] != npos; }

  // Basis of {x : A x = 0} over columns [0, pivot_limit), one vector per free column.
  std::vector<std::vector<Rational>> nullspace() const;

  // Rows that could not be pivoted (inconsistent right-hand-side rows).
  const std::vector<SparseRow>& residual_rows() const { return residual_; }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t ncols_, pivot_limit_;
  std::vector<SparseRow> rows_;
  std::vector<std::size_t> pivot_cols_;
  std::vector<std::size_t> pivot_index_;
  std::vector<SparseRow> residual_;
};

// row <- row - c * other
SparseRow sparse_axpy(const SparseRow& row, const Rational& c, const SparseRow& other);

std::size_t rank(const QMatrix& m);
std::optional<Rational> determinant(const QMatrix& m);

// Exact LU with partial pivoting (first nonzero pivot); factors once, solves many.
class ExactLU {
 public:
  explicit ExactLU(const QMatrix& a);
  bool invertible() const { return invertible_; }
  std::vector<Rational> solve(const std::vector<Rational>& b) const;

 private:
  QMatrix lu_;
  std::vector<std::size_t> perm_;
  bool invertible_ = true;
};

// Solves A x = b when consistent (any solution with free variables 0).
std::optional<std::vector<Rational>> solve_any(const QMatrix& a, const std::vector<Rational>& b);

// Characteristic polynomial det(x I - A), coefficients low to high.
std::vector<Rational> characteristic_polynomial(const QMatrix& a);

// Monic minimal polynomial of v under A: least p with p(A) v = 0. Low to high.
std::vector<Rational> krylov_minimal_polynomial(const QMatrix& a, const std::vector<Rational>& v);

// Numerical null space of a complex matrix: right singular vectors whose
// singular values are <= rel_tol * largest singular value.
Eigen::MatrixXcd numeric_nullspace(const Eigen::MatrixXcd& a, double rel_tol);

std::size_t numeric_rank(const Eigen::MatrixXcd& a, double rel_tol);

}  // namespace nejac

#endif
