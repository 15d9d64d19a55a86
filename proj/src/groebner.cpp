#include "nejac/groebner.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace nejac {

MonomialOrder::MonomialOrder(OrderKind kind, std::size_t nvars) : kind_(kind), rank_(nvars) {
  std::iota(rank_.begin(), rank_.end(), std::size_t{0});
}

MonomialOrder::MonomialOrder(OrderKind kind, std::vector<std::size_t> rank) : kind_(kind), rank_(std::move(rank)) {
  std::vector<std::size_t> sorted = rank_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i) throw std::invalid_argument("monomial order rank is not a permutation");
}

std::strong_ordering MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  if (kind_ != OrderKind::lex) {
    const int da = a.degree(), db = b.degree();
    if (da != db) return da <=> db;
  }
  if (kind_ == OrderKind::degrevlex) {
    for (std::size_t k = rank_.size(); k-- > 0;) {
      const std::size_t v = rank_[k];
      if (a[v] != b[v]) return b[v] <=> a[v];
    }
    return std::strong_ordering::equal;
  }
  for (std::size_t v : rank_)
    if (a[v] != b[v]) return a[v] <=> b[v];
  return std::strong_ordering::equal;
}

Monomial leading_monomial(const Poly& p, const MonomialOrder& order) {
  if (p.is_zero()) throw std::domain_error("leading monomial of the zero polynomial");
  const Monomial* best = nullptr;
  for (const auto& [m, c] : p.terms())
    if (!best || order.greater(m, *best)) best = &m;
  return *best;
}

Rational leading_coefficient(const Poly& p, const MonomialOrder& order) { return p.coeff(leading_monomial(p, order)); }

GroebnerBasis::GroebnerBasis(MonomialOrder order, std::vector<Poly> generators)
    : order_(std::move(order)), gens_(std::move(generators)) {
  for (const auto& g : gens_) lms_.push_back(leading_monomial(g, order_));
}

bool GroebnerBasis::is_unit_ideal() const {
  return std::any_of(lms_.begin(), lms_.end(), [](const Monomial& m) { return m.is_one(); });
}

namespace {

struct OrderGreater {
  const MonomialOrder* order;
  bool operator()(const Monomial& a, const Monomial& b) const { return order->greater(a, b); }
};

using WorkPoly = std::map<Monomial, Rational, OrderGreater>;

// Full reduction of p by basis polys with known leading data.
Division reduce(const Poly& p, std::span<const Poly> basis, const std::vector<Monomial>& lms,
                const std::vector<Rational>& lcs, const MonomialOrder& order, bool track) {
  const std::size_t n = p.nvars();
  WorkPoly work(OrderGreater{&order});
  for (const auto& [m, c] : p.terms()) work.emplace(m, c);
  Division out{Poly(n), {}};
  if (track) out.quotients.assign(basis.size(), Poly(n));
  while (!work.empty()) {
    auto it = work.begin();
    const Monomial m = it->first;
    const Rational c = it->second;
    std::size_t k = 0;
    while (k < basis.size() && !lms[k].divides(m)) ++k;
    if (k == basis.size()) {
      out.remainder.add_term(m, c);
      work.erase(it);
      continue;
    }
    const Monomial shift = m / lms[k];
    const Rational factor = c / lcs[k];
    if (track) out.quotients[k].add_term(shift, factor);
    for (const auto& [t, tc] : basis[k].terms()) {
      Monomial mt = t * shift;
      Rational delta = -factor * tc;
      auto [pos, inserted] = work.try_emplace(std::move(mt), delta);
      if (!inserted) {
        pos->second += delta;
        if (sgn(pos->second) == 0) work.erase(pos);
      }
    }
  }
  return out;
}

struct Element {
  Poly poly;
  Monomial lm;
  Rational lc;
  std::vector<Poly> rep;
};

void make_monic(Element& e) {
  const Rational inv = 1 / e.lc;
  e.poly *= inv;
  for (auto& r : e.rep) r *= inv;
  e.lc = 1;
}

std::vector<Element> run_buchberger(std::span<const Poly> gens, const MonomialOrder& order, bool track) {
  if (gens.empty()) throw std::invalid_argument("buchberger needs at least one generator");
  const std::size_t n = gens[0].nvars();
  if (order.nvars() != n) throw std::invalid_argument("monomial order arity does not match polynomials");
  std::vector<Element> basis;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (gens[k].nvars() != n) throw std::invalid_argument("generators in different numbers of variables");
    if (gens[k].is_zero()) continue;
    Element e{gens[k], leading_monomial(gens[k], order), leading_coefficient(gens[k], order), {}};
    if (track) {
      e.rep.assign(gens.size(), Poly(n));
      e.rep[k] = Poly::constant(n, Rational(1));
    }
    make_monic(e);
    basis.push_back(std::move(e));
  }
  if (basis.empty()) throw std::invalid_argument("buchberger needs a nonzero generator");

  auto current_division_data = [&](std::vector<Poly>& polys, std::vector<Monomial>& lms, std::vector<Rational>& lcs) {
    polys.clear();
    lms.clear();
    lcs.clear();
    for (const auto& e : basis) {
      polys.push_back(e.poly);
      lms.push_back(e.lm);
      lcs.push_back(e.lc);
    }
  };

  // Pending pairs, processed by the normal strategy: smallest lcm first.
  std::vector<std::pair<std::size_t, std::size_t>> pending;
  for (std::size_t j = 1; j < basis.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pending.emplace_back(i, j);
  auto is_pending = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return std::find(pending.begin(), pending.end(), std::make_pair(a, b)) != pending.end();
  };

  std::vector<Poly> polys;
  std::vector<Monomial> lms;
  std::vector<Rational> lcs;
  current_division_data(polys, lms, lcs);

  while (!pending.empty()) {
    auto best = std::min_element(pending.begin(), pending.end(), [&](const auto& p, const auto& q) {
      Monomial lp = lcm(basis[p.first].lm, basis[p.second].lm);
      Monomial lq = lcm(basis[q.first].lm, basis[q.second].lm);
      if (lp.degree() != lq.degree()) return lp.degree() < lq.degree();
      auto c = order.compare(lp, lq);
      if (c != 0) return c < 0;
      return p < q;
    });
    const auto [i, j] = *best;
    pending.erase(best);
    const Element& gi = basis[i];
    const Element& gj = basis[j];
    if (gi.lm.coprime(gj.lm)) continue;
    const Monomial l = lcm(gi.lm, gj.lm);
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == i || k == j) continue;
      if (basis[k].lm.divides(l) && !is_pending(i, k) && !is_pending(j, k)) chain = true;
    }
    if (chain) continue;

    const Monomial si = l / gi.lm, sj = l / gj.lm;
    Poly s = gi.poly.shifted(si) - gj.poly.shifted(sj);
    std::vector<Poly> srep;
    if (track) {
      srep.resize(gens.size(), Poly(n));
      for (std::size_t k = 0; k < gens.size(); ++k) srep[k] = gi.rep[k].shifted(si) - gj.rep[k].shifted(sj);
    }
    Division d = reduce(s, polys, lms, lcs, order, track);
    if (d.remainder.is_zero()) continue;
    Element e{std::move(d.remainder), Monomial(), Rational(0), {}};
    e.lm = leading_monomial(e.poly, order);
    e.lc = e.poly.coeff(e.lm);
    if (track) {
      for (std::size_t q = 0; q < d.quotients.size(); ++q) {
        if (d.quotients[q].is_zero()) continue;
        for (std::size_t k = 0; k < gens.size(); ++k) srep[k] -= d.quotients[q] * basis[q].rep[k];
      }
      e.rep = std::move(srep);
    }
    make_monic(e);
    const std::size_t idx = basis.size();
    basis.push_back(std::move(e));
    for (std::size_t k = 0; k < idx; ++k) pending.emplace_back(k, idx);
    current_division_data(polys, lms, lcs);
  }

  // Minimalize: drop elements whose leading monomial is divisible by another's.
  std::vector<Element> minimal;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    bool redundant = false;
    for (std::size_t q = 0; q < basis.size() && !redundant; ++q) {
      if (q == k || !basis[q].lm.divides(basis[k].lm)) continue;
      if (basis[q].lm != basis[k].lm || q < k) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[k]);
  }
  std::sort(minimal.begin(), minimal.end(),
            [&](const Element& a, const Element& b) { return order.compare(a.lm, b.lm) < 0; });

  // Interreduce tails.
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    std::vector<Poly> others;
    std::vector<Monomial> olms;
    std::vector<Rational> olcs;
    std::vector<std::size_t> idx;
    for (std::size_t q = 0; q < minimal.size(); ++q) {
      if (q == k) continue;
      others.push_back(minimal[q].poly);
      olms.push_back(minimal[q].lm);
      olcs.push_back(minimal[q].lc);
      idx.push_back(q);
    }
    Division d = reduce(minimal[k].poly, others, olms, olcs, order, track);
    minimal[k].poly = std::move(d.remainder);
    if (track) {
      for (std::size_t q = 0; q < d.quotients.size(); ++q) {
        if (d.quotients[q].is_zero()) continue;
        for (std::size_t g = 0; g < gens.size(); ++g) minimal[k].rep[g] -= d.quotients[q] * minimal[idx[q]].rep[g];
      }
    }
  }
  return minimal;
}

}  // namespace

Division divide(const Poly& p, std::span<const Poly> basis, const MonomialOrder& order, bool track_quotients) {
  std::vector<Monomial> lms;
  std::vector<Rational> lcs;
  for (const auto& g : basis) {
    lms.push_back(leading_monomial(g, order));
    lcs.push_back(g.coeff(lms.back()));
  }
  return reduce(p, basis, lms, lcs, order, track_quotients);
}

GroebnerBasis buchberger(std::span<const Poly> gens, const MonomialOrder& order) {
  auto elems = run_buchberger(gens, order, false);
  std::vector<Poly> out;
  for (auto& e : elems) out.push_back(std::move(e.poly));
  return GroebnerBasis(order, std::move(out));
}

TrackedBasis buchberger_tracked(std::span<const Poly> gens, const MonomialOrder& order) {
  auto elems = run_buchberger(gens, order, true);
  std::vector<Poly> out;
  std::vector<std::vector<Poly>> reps;
  for (auto& e : elems) {
    out.push_back(std::move(e.poly));
    reps.push_back(std::move(e.rep));
  }
  return {GroebnerBasis(order, std::move(out)), std::move(reps)};
}

Poly normal_form(const Poly& p, const GroebnerBasis& gb) {
  if (p.nvars() != gb.nvars()) throw std::invalid_argument("normal_form: arity mismatch");
  std::vector<Rational> lcs(gb.generators().size(), Rational(1));
  return reduce(p, gb.generators(), gb.leading_monomials(), lcs, gb.order(), false).remainder;
}

std::optional<std::vector<Poly>> membership_with_cofactors(const Poly& p, const TrackedBasis& tb) {
  const auto& gb = tb.basis;
  std::vector<Rational> lcs(gb.generators().size(), Rational(1));
  Division d = reduce(p, gb.generators(), gb.leading_monomials(), lcs, gb.order(), true);
  if (!d.remainder.is_zero()) return std::nullopt;
  const std::size_t ngens = tb.representations.empty() ? 0 : tb.representations[0].size();
  std::vector<Poly> cof(ngens, Poly(p.nvars()));
  for (std::size_t q = 0; q < d.quotients.size(); ++q) {
    if (d.quotients[q].is_zero()) continue;
    for (std::size_t k = 0; k < ngens; ++k) cof[k] += d.quotients[q] * tb.representations[q][k];
  }
  return cof;
}

std::optional<std::vector<Poly>> membership_with_cofactors(const Poly& p, std::span<const Poly> gens,
                                                           const MonomialOrder& order) {
  TrackedBasis tb = buchberger_tracked(gens, order);
  auto cof = membership_with_cofactors(p, tb);
  if (!cof) return cof;
  cof->resize(gens.size(), Poly(p.nvars()));
  Poly check = -p;
  for (std::size_t k = 0; k < gens.size(); ++k) check += (*cof)[k] * gens[k];
  if (!check.is_zero()) throw std::logic_error("cofactor reconstruction failed");
  return cof;
}

}  // namespace nejac
