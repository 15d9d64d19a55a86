#include "nejac/division.hpp"

#include "nejac/linalg.hpp"

#include <algorithm>
#include <tuple>

namespace nejac {

namespace {

struct Unknown {
  std::size_t component;
  Monomial m;
};

// Moves x along null space vectors while that strictly lowers the number of nonzeros.
void sparsify(std::vector<Rational>& x, const std::vector<SparseRow>& nulls) {
  for (int pass = 0; pass < 8; ++pass) {
    bool improved = false;
    for (const auto& v : nulls) {
      int best_delta = 0;
      Rational best_alpha;
      for (const auto& [j, vj] : v) {
        if (sgn(x[j]) == 0) continue;
        Rational alpha = x[j] / vj;
        int delta = 0;
        for (const auto& [l, vl] : v) delta += (sgn(x[l] - alpha * vl) != 0) - (sgn(x[l]) != 0);
        if (delta < best_delta) {
          best_delta = delta;
          best_alpha = alpha;
        }
      }
      if (best_delta < 0) {
        for (const auto& [l, vl] : v) x[l] -= best_alpha * vl;
        improved = true;
      }
    }
    if (!improved) break;
  }
}

}  // namespace

bool verify_certificate(const DivisionCertificate& c, const PolyMap& f) {
  if (c.cofactors.size() != f.size()) return false;
  Poly sum(c.p.nvars());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (c.cofactors[i].is_zero()) continue;
    if (c.cofactors[i].degree() + f.degrees()[i] > c.bound_used) return false;
    sum += c.cofactors[i] * f[i];
  }
  return sum == c.p;
}

Divider::Divider(PolyMap f) : f_(std::move(f)), gb_(buchberger(f_.components(), MonomialOrder::degrevlex(f_.nvars()))) {}

bool Divider::in_ideal(const Poly& p) const { return normal_form(p, gb_).is_zero(); }

DivisionCertificate Divider::divide(const Poly& p, int nu) {
  std::vector<Poly> one{p};
  return divide_all(one, nu).front();
}

std::vector<DivisionCertificate> Divider::divide_all(std::span<const Poly> ps, int nu) {
  const std::size_t n = f_.nvars();
  std::vector<DivisionCertificate> out(ps.size());
  std::map<int, std::vector<std::size_t>> by_budget;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    if (!in_ideal(ps[k])) throw DivisionError("not in ideal");
    auto& c = out[k];
    c.p = ps[k];
    c.nu = nu;
    c.cofactors.assign(n, Poly(n));
    if (ps[k].is_zero()) {
      c.bound_used = nu;
      continue;
    }
    c.bound_used = ps[k].degree() + nu;
    by_budget[c.bound_used].push_back(k);
  }

  for (const auto& [budget, members] : by_budget) {
    // Unknowns in ascending degree so pivots, hence nonzero values, prefer low degree.
    std::vector<Unknown> unknowns;
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& m : monomials_up_to(n, budget - f_.degrees()[i])) unknowns.push_back({i, m});
    std::stable_sort(unknowns.begin(), unknowns.end(),
                     [](const Unknown& a, const Unknown& b) { return a.m.degree() < b.m.degree(); });
    const std::size_t nu_cols = unknowns.size();

    std::map<Monomial, std::map<std::size_t, Rational>> rows;
    for (const auto& t : monomials_up_to(n, budget)) rows[t];
    for (std::size_t col = 0; col < nu_cols; ++col)
      for (const auto& [m, c] : f_[unknowns[col].component].terms()) rows[m * unknowns[col].m][col] += c;
    for (std::size_t r = 0; r < members.size(); ++r)
      for (const auto& [m, c] : ps[members[r]].terms()) rows[m][nu_cols + r] = c;

    RowEchelon ech(nu_cols + members.size(), nu_cols);
    for (auto& [t, entries] : rows) {
      SparseRow row;
      for (auto& [col, c] : entries)
        if (sgn(c) != 0) row.emplace_back(col, std::move(c));
      if (!row.empty()) ech.insert(std::move(row));
    }
    last_size_ = {rows.size(), nu_cols};

    for (const auto& row : ech.residual_rows())
      for (const auto& [col, c] : row)
        if (col >= nu_cols) throw DivisionError("bound violated");

    std::vector<SparseRow> nulls(nu_cols);
    for (std::size_t col = 0; col < nu_cols; ++col)
      if (!ech.is_pivot(col)) nulls[col].emplace_back(col, Rational(1));
    for (std::size_t piv : ech.pivot_columns())
      for (const auto& [col, c] : ech.row_for_pivot(piv))
        if (col < nu_cols && col != piv) nulls[col].emplace_back(piv, -c);
    std::erase_if(nulls, [](const SparseRow& v) { return v.empty(); });
    for (auto& v : nulls) std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    for (std::size_t r = 0; r < members.size(); ++r) {
      std::vector<Rational> x(nu_cols, Rational(0));
      for (std::size_t piv : ech.pivot_columns()) {
        const auto& row = ech.row_for_pivot(piv);
        auto it = std::find_if(row.begin(), row.end(), [&](const auto& e) { return e.first == nu_cols + r; });
        if (it != row.end()) x[piv] = it->second;
      }
      sparsify(x, nulls);
      auto& c = out[members[r]];
      for (std::size_t col = 0; col < nu_cols; ++col)
        if (sgn(x[col]) != 0) c.cofactors[unknowns[col].component].add_term(unknowns[col].m, x[col]);
    }
  }

  for (auto& c : out) {
    c.audit.clear();
    for (std::size_t i = 0; i < n; ++i) {
      DegreeAudit a;
      a.bound = c.bound_used;
      if (!c.cofactors[i].is_zero()) a.degree = c.cofactors[i].degree() + f_.degrees()[i];
      a.within = !a.degree || *a.degree <= a.bound;
      c.audit.push_back(a);
    }
    c.verified = verify_certificate(c, f_);
  }
  return out;
}

DivisionCertificate divide_with_bound(const Poly& p, const PolyMap& f, int nu) { return Divider(f).divide(p, nu); }

}  // namespace nejac
