#include "nejac/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace nejac {

Eigen::MatrixXcd to_eigen(const QMatrix& m) {
  Eigen::MatrixXcd r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Complex(m(i, j).get_d(), 0.0);
  return r;
}

SparseRow sparse_axpy(const SparseRow& row, const Rational& c, const SparseRow& other) {
  SparseRow out;
  out.reserve(row.size() + other.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < other.size()) {
    if (j == other.size() || (i < row.size() && row[i].first < other[j].first)) {
      out.push_back(row[i++]);
    } else if (i == row.size() || other[j].first < row[i].first) {
      out.emplace_back(other[j].first, -c * other[j].second);
      ++j;
    } else {
      Rational v = row[i].second - c * other[j].second;
      if (sgn(v) != 0) out.emplace_back(row[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

RowEchelon::RowEchelon(std::size_t ncols, std::size_t pivot_limit)
    : ncols_(ncols), pivot_limit_(pivot_limit), pivot_index_(ncols, npos) {
  if (pivot_limit > ncols) throw std::invalid_argument("pivot limit exceeds column count");
}

SparseRow RowEchelon::reduce(SparseRow row) const {
  // Pivot rows are fully reduced, so eliminating one pivot column never
  // reintroduces another pivot column.
  std::vector<std::pair<std::size_t, Rational>> hits;
  for (const auto& [col, v] : row)
    if (pivot_index_[col] != npos) hits.emplace_back(col, v);
  for (const auto& [col, v] : hits) {
    // The coefficient may have changed through earlier eliminations only in
    // non-pivot columns, so v is still current.
    row = sparse_axpy(row, v, rows_[pivot_index_[col]]);
  }
  return row;
}

bool RowEchelon::insert(SparseRow row) {
  row = reduce(std::move(row));
  if (row.empty()) return false;
  auto piv = std::find_if(row.begin(), row.end(), [&](const auto& e) { return e.first < pivot_limit_; });
  if (piv == row.end()) {
    residual_.push_back(std::move(row));
    return false;
  }
  const std::size_t col = piv->first;
  const Rational inv = 1 / piv->second;
  for (auto& e : row) e.second *= inv;
  // Clear the new pivot column from existing rows.
  for (auto& other : rows_) {
    auto it = std::lower_bound(other.begin(), other.end(), col, [](const auto& e, std::size_t c) { return e.first < c; });
    if (it != other.end() && it->first == col) {
      Rational c = it->second;
      other = sparse_axpy(other, c, row);
    }
  }
  pivot_index_[col] = rows_.size();
  pivot_cols_.push_back(col);
  rows_.push_back(std::move(row));
  return true;
}

std::vector<std::vector<Rational>> RowEchelon::nullspace() const {
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < pivot_limit_; ++free) {
    if (pivot_index_[free] != npos) continue;
    std::vector<Rational> v(pivot_limit_, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const auto& row = rows_[r];
      auto it = std::lower_bound(row.begin(), row.end(), free, [](const auto& e, std::size_t c) { return e.first < c; });
      if (it != row.end() && it->first == free) v[pivot_cols_[r]] = -it->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {
SparseRow to_sparse(const QMatrix& m, std::size_t r) {
  SparseRow row;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (sgn(m(r, c)) != 0) row.emplace_back(c, m(r, c));
  return row;
}
}  // namespace

std::size_t rank(const QMatrix& m) {
  RowEchelon e(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) e.insert(to_sparse(m, r));
  return e.rank();
}

std::optional<Rational> determinant(const QMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  QMatrix a = m;
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && sgn(a(p, k)) == 0) ++p;
    if (p == n) return Rational(0);
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(a(i, k)) == 0) continue;
      Rational f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

ExactLU::ExactLU(const QMatrix& a) : lu_(a), perm_(a.rows()) {
  if (a.rows() != a.cols()) throw std::invalid_argument("ExactLU needs a square matrix");
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && sgn(lu_(p, k)) == 0) ++p;
    if (p == n) {
      invertible_ = false;
      return;
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(p, j), lu_(k, j));
      std::swap(perm_[p], perm_[k]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(lu_(i, k)) == 0) continue;
      lu_(i, k) /= lu_(k, k);
      for (std::size_t j = k + 1; j < n; ++j)
        if (sgn(lu_(k, j)) != 0) lu_(i, j) -= lu_(i, k) * lu_(k, j);
    }
  }
}

std::vector<Rational> ExactLU::solve(const std::vector<Rational>& b) const {
  if (!invertible_) throw std::domain_error("matrix is singular");
  const std::size_t n = lu_.rows();
  std::vector<Rational> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = b[perm_[i]];
    for (std::size_t j = 0; j < i; ++j)
      if (sgn(lu_(i, j)) != 0) y[i] -= lu_(i, j) * y[j];
  }
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j)
      if (sgn(lu_(i, j)) != 0) y[i] -= lu_(i, j) * y[j];
    y[i] /= lu_(i, i);
  }
  return y;
}

std::optional<std::vector<Rational>> solve_any(const QMatrix& a, const std::vector<Rational>& b) {
  const std::size_t n = a.cols();
  RowEchelon e(n + 1, n);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    SparseRow row = to_sparse(a, r);
    if (sgn(b[r]) != 0) row.emplace_back(n, b[r]);
    e.insert(std::move(row));
  }
  if (!e.residual_rows().empty()) return std::nullopt;
  std::vector<Rational> x(n, Rational(0));
  for (std::size_t col : e.pivot_columns()) {
    const auto& row = e.row_for_pivot(col);
    if (!row.empty() && row.back().first == n) x[col] = row.back().second;
  }
  return x;
}

std::vector<Rational> characteristic_polynomial(const QMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("characteristic polynomial of a non-square matrix");
  const std::size_t n = m.rows();
  QMatrix h = m;
  // Reduce to upper Hessenberg form by elementary similarity transforms.
  for (std::size_t k = 1; k + 1 < n; ++k) {
    std::size_t p = k;
    while (p < n && sgn(h(p, k - 1)) == 0) ++p;
    if (p == n) continue;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(p, j), h(k, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(h(i, p), h(i, k));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(h(i, k - 1)) == 0) continue;
      Rational f = h(i, k - 1) / h(k, k - 1);
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(h(k, j)) != 0) h(i, j) -= f * h(k, j);
      for (std::size_t r = 0; r < n; ++r)
        if (sgn(h(r, i)) != 0) h(r, k) += f * h(r, i);
    }
  }
  // p_k = characteristic polynomial of the leading k x k block.
  std::vector<std::vector<Rational>> p(n + 1);
  p[0] = {Rational(1)};
  for (std::size_t k = 1; k <= n; ++k) {
    // p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_{i,k} * (prod_{j=i+1}^{k} h_{j,j-1}) p_{i-1}
    std::vector<Rational> next(k + 1, Rational(0));
    for (std::size_t d = 0; d < p[k - 1].size(); ++d) {
      next[d + 1] += p[k - 1][d];
      next[d] -= h(k - 1, k - 1) * p[k - 1][d];
    }
    Rational prod = 1;
    for (std::size_t i = k - 1; i-- > 0;) {
      prod *= h(i + 1, i);
      if (sgn(prod) == 0) break;
      const Rational c = h(i, k - 1) * prod;
      if (sgn(c) == 0) continue;
      for (std::size_t d = 0; d < p[i].size(); ++d) next[d] -= c * p[i][d];
    }
    p[k] = std::move(next);
  }
  return p[n];
}

std::vector<Rational> krylov_minimal_polynomial(const QMatrix& a, const std::vector<Rational>& v) {
  const std::size_t n = a.rows();
  // Columns 0..n-1 hold the Krylov vector, columns n.. record the combination.
  RowEchelon echelon(2 * n + 2, n);
  std::vector<Rational> cur = v;
  for (std::size_t k = 0; k <= n; ++k) {
    SparseRow row;
    for (std::size_t i = 0; i < n; ++i)
      if (sgn(cur[i]) != 0) row.emplace_back(i, cur[i]);
    row.emplace_back(n + k, Rational(1));
    SparseRow reduced = echelon.reduce(row);
    bool dependent = std::none_of(reduced.begin(), reduced.end(), [&](const auto& e) { return e.first < n; });
    if (dependent) {
      // reduced = sum_j c_j [x^j] with c_k = 1 gives the relation.
      std::vector<Rational> poly(k + 1, Rational(0));
      for (const auto& [col, val] : reduced)
        if (col >= n) poly[col - n] = val;
      const Rational lead = poly[k];
      for (auto& c : poly) c /= lead;
      return poly;
    }
    echelon.insert(std::move(row));
    cur = a.apply(cur);
  }
  throw std::logic_error("Krylov sequence did not become dependent");
}

Eigen::MatrixXcd numeric_nullspace(const Eigen::MatrixXcd& a, double rel_tol) {
  if (a.cols() == 0) return Eigen::MatrixXcd(0, 0);
  if (a.rows() == 0) return Eigen::MatrixXcd::Identity(a.cols(), a.cols());
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * std::max(smax, 1e-300)) ++r;
  if (smax == 0.0) r = 0;
  return svd.matrixV().rightCols(a.cols() - r);
}

std::size_t numeric_rank(const Eigen::MatrixXcd& a, double rel_tol) {
  return static_cast<std::size_t>(a.cols() - numeric_nullspace(a, rel_tol).cols());
}

}  // namespace nejac
