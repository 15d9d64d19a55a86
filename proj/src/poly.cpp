#include "nejac/poly.hpp"

#include <cmath>
#include <sstream>

namespace nejac {

CPoly pruned(const CPoly& p, double rel_tol) {
  double scale = 0.0;
  for (const auto& [m, c] : p.terms()) scale = std::max(scale, std::abs(c));
  CPoly r(p.nvars());
  for (const auto& [m, c] : p.terms())
    if (std::abs(c) > rel_tol * scale) r.add_term(m, c);
  return r;
}

Complex eval(const Poly& p, std::span<const Complex> z) { return p.eval<Complex>(z); }

Rational eval_exact(const Poly& p, std::span<const Rational> z) { return p.eval<Rational>(z); }

HForm homogenize(const Poly& p) {
  if (p.is_zero()) throw std::domain_error("cannot homogenize zero");
  const int d = p.degree();
  Poly h(p.nvars() + 1);
  for (const auto& [m, c] : p.terms()) {
    std::vector<int> e(p.nvars() + 1);
    e[0] = d - m.degree();
    std::copy(m.exponents().begin(), m.exponents().end(), e.begin() + 1);
    h.add_term(Monomial(std::move(e)), c);
  }
  return {std::move(h), d};
}

Poly dehomogenize(const HForm& h) {
  if (h.form.nvars() == 0) throw std::invalid_argument("dehomogenize: form has no Z0 variable");
  Poly p(h.form.nvars() - 1);
  for (const auto& [m, c] : h.form.terms()) {
    std::vector<int> e(m.exponents().begin() + 1, m.exponents().end());
    p.add_term(Monomial(std::move(e)), c);
  }
  return p;
}

PolyMap::PolyMap(std::vector<Poly> components) : comps_(std::move(components)) {
  if (comps_.empty()) throw std::invalid_argument("polynomial map needs at least one component");
  for (const auto& c : comps_) {
    if (c.nvars() != comps_.size())
      throw std::invalid_argument("polynomial map is not square: " + std::to_string(comps_.size()) +
                                  " components in " + std::to_string(c.nvars()) + " variables");
    if (c.is_zero()) throw std::invalid_argument("polynomial map has a zero component");
    degrees_.push_back(c.degree());
  }
}

long long PolyMap::bezout_number() const {
  long long b = 1;
  for (int d : degrees_) b *= d;
  return b;
}

int PolyMap::degree_excess() const {
  int s = 0;
  for (int d : degrees_) s += d - 1;
  return s;
}

int PolyMap::min_degree() const { return *std::min_element(degrees_.begin(), degrees_.end()); }

template <class C>
BasicPoly<C> determinant(const std::vector<std::vector<BasicPoly<C>>>& m, std::size_t nvars) {
  const std::size_t n = m.size();
  if (n == 0) return BasicPoly<C>::constant(nvars, C(1));
  if (n > 20) throw std::invalid_argument("determinant: matrix too large for minor expansion");
  // minors[mask] = determinant of the rows (n - popcount(mask)) .. n-1 against the columns in mask.
  std::vector<BasicPoly<C>> minors(std::size_t{1} << n, BasicPoly<C>(nvars));
  minors[0] = BasicPoly<C>::constant(nvars, C(1));
  for (std::size_t mask = 1; mask < minors.size(); ++mask) {
    const int k = __builtin_popcountll(mask);
    const std::size_t row = n - static_cast<std::size_t>(k);
    BasicPoly<C> acc(nvars);
    int sign_pos = 0;
    for (std::size_t col = 0; col < n; ++col) {
      if (!(mask & (std::size_t{1} << col))) continue;
      const auto& entry = m[row][col];
      if (!entry.is_zero() && !minors[mask ^ (std::size_t{1} << col)].is_zero()) {
        auto t = entry * minors[mask ^ (std::size_t{1} << col)];
        if (sign_pos % 2 == 0)
          acc += t;
        else
          acc -= t;
      }
      ++sign_pos;
    }
    minors[mask] = std::move(acc);
  }
  return minors.back();
}

template Poly determinant<Rational>(const std::vector<std::vector<Poly>>&, std::size_t);
template CPoly determinant<Complex>(const std::vector<std::vector<CPoly>>&, std::size_t);

std::vector<std::vector<Poly>> jacobian_matrix(const PolyMap& f) {
  std::vector<std::vector<Poly>> jm(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < f.nvars(); ++j) jm[i].push_back(f[i].derivative(j));
  return jm;
}

Poly jacobian(const PolyMap& f) { return determinant(jacobian_matrix(f), f.nvars()); }

std::vector<Monomial> monomials_of_degree(std::size_t nvars, int d) {
  std::vector<Monomial> out;
  if (d < 0) return out;
  if (nvars == 0) {
    if (d == 0) out.emplace_back(0);
    return out;
  }
  std::vector<int> e(nvars, 0);
  auto rec = [&](auto&& self, std::size_t v, int left) -> void {
    if (v + 1 == nvars) {
      e[v] = left;
      out.emplace_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[v] = k;
      self(self, v + 1, left - k);
    }
  };
  rec(rec, 0, d);
  return out;
}

std::vector<Monomial> monomials_up_to(std::size_t nvars, int d) {
  std::vector<Monomial> out;
  for (int k = 0; k <= d; ++k) {
    auto layer = monomials_of_degree(nvars, k);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

std::vector<std::string> default_names(std::size_t nvars, bool with_z0) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < nvars; ++i) names.push_back("Z" + std::to_string(with_z0 ? i : i + 1));
  return names;
}

std::string to_string(const Monomial& m, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += names.at(i);
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::string to_string(const Poly& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  // Print by descending degree, then descending lexicographic exponents.
  std::vector<std::pair<Monomial, Rational>> terms(p.terms().begin(), p.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    int da = a.first.degree(), db = b.first.degree();
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms) {
    Rational mag = abs(c);
    if (sgn(c) < 0)
      os << (first ? "-" : " - ");
    else if (!first)
      os << " + ";
    if (m.is_one())
      os << to_string(mag);
    else if (mag == 1)
      os << to_string(m, names);
    else
      os << to_string(mag) << '*' << to_string(m, names);
    first = false;
  }
  return os.str();
}

std::string to_string(const Poly& p) { return to_string(p, default_names(p.nvars())); }

std::string to_string(const HForm& h) { return to_string(h.form, default_names(h.form.nvars(), true)); }

}  // namespace nejac
