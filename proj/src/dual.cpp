#include "nejac/dual.hpp"

#include <algorithm>
#include <map>

namespace nejac {

long DualSpace::column_of(const Monomial& m) const {
  if (m.degree() > max_degree) return -1;
  auto it = std::find(columns.begin(), columns.end(), m);
  return it == columns.end() ? -1 : static_cast<long>(it - columns.begin());
}

namespace {

// Columns in descending degree so that echelon pivots land on high-degree
// monomials and the free columns (the functionals' unit entries) on low ones.
std::vector<Monomial> dual_columns(std::size_t n, int d) {
  auto cols = monomials_up_to(n, d);
  std::reverse(cols.begin(), cols.end());
  return cols;
}

template <class C>
std::vector<std::vector<std::pair<std::size_t, C>>> macaulay_rows(const std::vector<BasicPoly<C>>& sys, int d,
                                                                  const std::map<Monomial, std::size_t>& index) {
  std::vector<std::vector<std::pair<std::size_t, C>>> rows;
  for (const auto& f : sys) {
    if (f.is_zero()) continue;
    const int ord = f.order();
    const std::size_t n = f.nvars();
    for (const auto& beta : monomials_up_to(n, d - ord)) {
      std::vector<std::pair<std::size_t, C>> row;
      for (const auto& [m, c] : f.terms()) {
        Monomial t = m * beta;
        if (t.degree() > d) continue;
        row.emplace_back(index.at(t), c);
      }
      if (row.empty()) continue;
      std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::map<Monomial, std::size_t> index_of(const std::vector<Monomial>& cols) {
  std::map<Monomial, std::size_t> idx;
  for (std::size_t i = 0; i < cols.size(); ++i) idx.emplace(cols[i], i);
  return idx;
}

std::size_t arity(const auto& sys) {
  if (sys.empty()) throw std::invalid_argument("dual space of an empty system");
  return sys.front().nvars();
}

}  // namespace

DualSpace dual_space(const std::vector<Poly>& local_system, int cap) {
  const std::size_t n = arity(local_system);
  DualSpace prev;
  prev.nvars = n;
  for (int d = 0; d <= cap; ++d) {
    DualSpace cur;
    cur.nvars = n;
    cur.max_degree = d;
    cur.columns = dual_columns(n, d);
    RowEchelon ech(cur.columns.size());
    for (auto& row : macaulay_rows(local_system, d, index_of(cur.columns))) ech.insert(SparseRow(row.begin(), row.end()));
    cur.exact_basis = ech.nullspace();
    if (cur.exact_basis.empty()) {
      // The origin is not a zero of the system.
      prev.max_degree = -1;
      return prev;
    }
    if (d > 0 && cur.dimension() == prev.dimension()) return prev;
    prev = std::move(cur);
  }
  throw DualSpaceError("zero may not be isolated or cap too small (cap " + std::to_string(cap) + ")");
}

DualSpace dual_space(const std::vector<CPoly>& local_system, int cap, double rank_tol) {
  const std::size_t n = arity(local_system);
  DualSpace prev;
  prev.nvars = n;
  prev.numeric = true;
  prev.tol = rank_tol;
  prev.numeric_basis = Eigen::MatrixXcd(0, 0);
  for (int d = 0; d <= cap; ++d) {
    DualSpace cur;
    cur.nvars = n;
    cur.max_degree = d;
    cur.numeric = true;
    cur.tol = rank_tol;
    cur.columns = dual_columns(n, d);
    auto rows = macaulay_rows(local_system, d, index_of(cur.columns));
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows.size()),
                                                static_cast<Eigen::Index>(cur.columns.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (const auto& [c, v] : rows[r]) a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
    cur.numeric_basis = numeric_nullspace(a, rank_tol);
    if (cur.numeric_basis.cols() == 0) {
      prev.max_degree = -1;
      return prev;
    }
    if (d > 0 && cur.dimension() == prev.dimension()) return prev;
    prev = std::move(cur);
  }
  throw DualSpaceError("zero may not be isolated or cap too small (cap " + std::to_string(cap) + ")");
}

bool local_membership(const Poly& g, const DualSpace& d) {
  if (d.numeric) return local_membership(g.cast<Complex>(), d);
  for (const auto& lambda : d.exact_basis) {
    Rational acc = 0;
    for (const auto& [m, c] : g.terms()) {
      long col = d.column_of(m);
      if (col >= 0) acc += lambda[static_cast<std::size_t>(col)] * c;
    }
    if (sgn(acc) != 0) return false;
  }
  return true;
}

bool local_membership(const CPoly& g, const DualSpace& d) {
  if (!d.numeric) throw std::invalid_argument("complex membership test needs a numeric dual space");
  double gnorm = 0.0;
  for (const auto& [m, c] : g.terms()) gnorm = std::max(gnorm, std::abs(c));
  for (Eigen::Index k = 0; k < d.numeric_basis.cols(); ++k) {
    Complex acc = 0;
    for (const auto& [m, c] : g.terms()) {
      long col = d.column_of(m);
      if (col >= 0) acc += d.numeric_basis(col, k) * c;
    }
    if (std::abs(acc) > std::max(d.tol, 1e-12) * std::max(1.0, gnorm) * 100) return false;
  }
  return true;
}

std::vector<std::string> describe_functionals(const DualSpace& d, const std::vector<std::string>& names) {
  std::vector<std::string> dual_names;
  for (const auto& nm : names) dual_names.push_back("d" + nm);
  std::vector<std::string> out;
  if (d.numeric) return out;
  for (const auto& lambda : d.exact_basis) {
    Poly p(d.nvars);
    for (std::size_t c = 0; c < lambda.size(); ++c) p.add_term(d.columns[c], lambda[c]);
    out.push_back(to_string(p, dual_names));
  }
  return out;
}

}  // namespace nejac
