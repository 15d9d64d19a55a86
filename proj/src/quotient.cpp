#include "nejac/quotient.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

namespace nejac {

SeededInts::SeededInts(std::uint64_t seed) : engine_(seed) {}

long SeededInts::next(long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<long>(engine_() % span);
}

long SeededInts::next_nonzero(long bound) {
  long v = next(1, bound);
  return (engine_() & 1U) ? v : -v;
}

double SeededInts::next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::optional<std::size_t> non_zero_dimensional_witness(const GroebnerBasis& gb) {
  for (std::size_t v = 0; v < gb.nvars(); ++v) {
    bool found = false;
    for (const auto& lm : gb.leading_monomials()) {
      bool pure = true;
      for (std::size_t w = 0; w < gb.nvars(); ++w)
        if (w != v && lm[w] != 0) pure = false;
      if (pure) found = true;
    }
    if (!found) return v;
  }
  return std::nullopt;
}

bool is_zero_dimensional(const PolyMap& f) {
  GroebnerBasis gb = buchberger(f.components(), MonomialOrder::degrevlex(f.nvars()));
  return !non_zero_dimensional_witness(gb).has_value();
}

QuotientAlgebra::QuotientAlgebra(GroebnerBasis gb) : gb_(std::move(gb)) {
  if (auto w = non_zero_dimensional_witness(gb_)) throw NotZeroDimensional(*w);
  const std::size_t n = gb_.nvars();
  const auto& lms = gb_.leading_monomials();
  auto standard = [&](const Monomial& m) {
    return std::none_of(lms.begin(), lms.end(), [&](const Monomial& l) { return l.divides(m); });
  };
  std::set<Monomial> seen;
  std::deque<Monomial> queue;
  if (standard(Monomial(n))) {
    queue.push_back(Monomial(n));
    seen.insert(Monomial(n));
  }
  while (!queue.empty()) {
    Monomial m = queue.front();
    queue.pop_front();
    basis_.push_back(m);
    for (std::size_t v = 0; v < n; ++v) {
      Monomial next = m * Monomial::variable(n, v);
      if (standard(next) && seen.insert(next).second) queue.push_back(next);
    }
  }
  std::sort(basis_.begin(), basis_.end(),
            [&](const Monomial& a, const Monomial& b) { return gb_.order().compare(a, b) < 0; });
  for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
  for (std::size_t v = 0; v < n; ++v) {
    QMatrix m(basis_.size(), basis_.size());
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      Monomial prod = basis_[j] * Monomial::variable(n, v);
      auto it = index_.find(prod);
      if (it != index_.end()) {
        m(it->second, j) = 1;
        continue;
      }
      auto c = coords(Poly::term(prod, Rational(1)));
      for (std::size_t i = 0; i < c.size(); ++i) m(i, j) = c[i];
    }
    mult_.push_back(std::move(m));
  }
}

std::vector<Rational> QuotientAlgebra::coords(const Poly& p) const {
  std::vector<Rational> v(basis_.size(), Rational(0));
  Poly r = normal_form(p, gb_);
  for (const auto& [m, c] : r.terms()) v[index_.at(m)] = c;
  return v;
}

Poly QuotientAlgebra::from_coords(const std::vector<Rational>& v) const {
  Poly p(nvars());
  for (std::size_t i = 0; i < basis_.size(); ++i) p.add_term(basis_[i], v[i]);
  return p;
}

QMatrix QuotientAlgebra::mult_matrix(const Poly& h) const {
  QMatrix m(mu(), mu());
  for (std::size_t j = 0; j < mu(); ++j) {
    auto c = coords(h.shifted(basis_[j]));
    for (std::size_t i = 0; i < mu(); ++i) m(i, j) = c[i];
  }
  return m;
}

Rational QuotientAlgebra::trace(const Poly& h) const {
  Rational t = 0;
  for (std::size_t j = 0; j < mu(); ++j) t += coords(h.shifted(basis_[j]))[j];
  return t;
}

const std::vector<Rational>& QuotientAlgebra::trace_vector() const {
  if (!traces_) {
    std::vector<Rational> t;
    for (const auto& b : basis_) t.push_back(trace(Poly::term(b, Rational(1))));
    traces_ = std::move(t);
  }
  return *traces_;
}

QuotientAlgebra build_quotient(std::span<const Poly> gens) {
  if (gens.empty()) throw std::invalid_argument("build_quotient: no generators");
  return QuotientAlgebra(buchberger(gens, MonomialOrder::degrevlex(gens[0].nvars())));
}

QuotientAlgebra build_quotient(const PolyMap& f) { return build_quotient(f.components()); }

namespace {

using LComplex = std::complex<long double>;

// Newton iteration on a square system in long double.
std::vector<Complex> newton_polish(std::span<const Poly> eqs, std::vector<Complex> z) {
  const std::size_t n = z.size();
  if (eqs.size() != n || n == 0) return z;
  std::vector<CPoly> f;
  std::vector<std::vector<CPoly>> jac(n);
  for (const auto& e : eqs) f.push_back(e.cast<Complex>());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) jac[i].push_back(f[i].derivative(j));
  auto eval_l = [](const CPoly& p, const std::vector<LComplex>& x) {
    LComplex acc = 0;
    for (const auto& [m, c] : p.terms()) {
      LComplex t(c.real(), c.imag());
      for (std::size_t i = 0; i < x.size(); ++i)
        for (int e = 0; e < m[i]; ++e) t *= x[i];
      acc += t;
    }
    return acc;
  };
  std::vector<LComplex> x(z.begin(), z.end());
  for (int it = 0; it < 8; ++it) {
    Eigen::MatrixXcd jm(n, n);
    Eigen::VectorXcd rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
      LComplex fi = eval_l(f[i], x);
      rhs(i) = Complex(static_cast<double>(fi.real()), static_cast<double>(fi.imag()));
      for (std::size_t j = 0; j < n; ++j) {
        LComplex v = eval_l(jac[i][j], x);
        jm(i, j) = Complex(static_cast<double>(v.real()), static_cast<double>(v.imag()));
      }
    }
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(jm);
    if (!lu.isInvertible()) break;
    Eigen::VectorXcd step = lu.solve(rhs);
    double size = step.norm();
    for (std::size_t i = 0; i < n; ++i) x[i] -= LComplex(step(i).real(), step(i).imag());
    if (size < 1e-17) break;
  }
  for (std::size_t i = 0; i < n; ++i) z[i] = Complex(static_cast<double>(x[i].real()), static_cast<double>(x[i].imag()));
  return z;
}

double residual(std::span<const Poly> eqs, const std::vector<Complex>& z) {
  double r = 0.0;
  for (const auto& e : eqs) {
    double scale = 0.0;
    for (const auto& [m, c] : e.terms()) {
      double t = std::abs(c.get_d());
      for (std::size_t i = 0; i < z.size(); ++i) t *= std::pow(std::abs(z[i]), m[i]);
      scale += t;
    }
    r = std::max(r, std::abs(eval(e, z)) / std::max(scale, 1.0));
  }
  return r;
}

}  // namespace

ZeroSet solve_zeros(const QuotientAlgebra& qa, std::span<const Poly> equations, const SolveOptions& opts) {
  ZeroSet out;
  out.seed = opts.seed;
  const std::size_t n = qa.nvars();
  const std::size_t mu = qa.mu();
  if (mu == 0) return out;

  SeededInts rng(opts.seed);
  QMatrix mu_mat(mu, mu);
  for (std::size_t v = 0; v < n; ++v) {
    Rational c = rng.next_nonzero(20);
    out.combination.push_back(c);
    mu_mat = mu_mat + c * qa.mult_matrix(v);
  }
  // Exact multiplicity structure from the square-free factorization of the characteristic polynomial.
  auto layers = squarefree_decomposition(UPoly(characteristic_polynomial(mu_mat)));

  Eigen::MatrixXcd mu_num = to_eigen(mu_mat);
  std::vector<Eigen::MatrixXcd> mult_t;
  for (std::size_t v = 0; v < n; ++v) mult_t.push_back(to_eigen(qa.mult_matrix(v)).transpose());
  const double scale = std::max(1.0, mu_num.norm());

  for (std::size_t k = 0; k < layers.size(); ++k) {
    const UPoly& s = layers[k];
    if (s.degree() == 0) continue;
    const int mult = static_cast<int>(k) + 1;
    for (Complex lambda : numeric_roots(s)) {
      Eigen::MatrixXcd shifted = mu_num - lambda * Eigen::MatrixXcd::Identity(mu, mu);
      // Left eigenvectors of M_u for lambda contain the evaluation functional of the zero.
      Eigen::MatrixXcd left = numeric_nullspace(shifted.transpose(), std::max(opts.tol, 1e-12));
      if (left.cols() == 0) throw RerandomizeError("eigenvalue " + std::to_string(lambda.real()) + " has no numeric eigenvector");
      AffineZero z;
      z.multiplicity = mult;
      for (std::size_t v = 0; v < n; ++v) {
        Eigen::MatrixXcd restricted = left.adjoint() * mult_t[v] * left;
        Eigen::MatrixXcd drift = mult_t[v] * left - left * restricted;
        if (drift.norm() > 1e-6 * scale * std::max(1.0, restricted.norm()))
          throw RerandomizeError("eigenspace is not invariant under coordinate multiplication; reseed");
        z.coordinates.push_back(restricted.trace() / static_cast<double>(left.cols()));
      }
      if (mult == 1) z.coordinates = newton_polish(equations, z.coordinates);
      out.zeros.push_back(std::move(z));
    }
  }

  // Consistency: residuals and power sums tr(M_i^e) = sum mult * z_i^e.
  for (const auto& z : out.zeros) {
    double r = residual(equations, z.coordinates);
    if (r > 1e-6) throw RerandomizeError("zero with residual " + std::to_string(r) + " found; reseed the separating form");
  }
  for (std::size_t v = 0; v < n; ++v) {
    QMatrix sq = qa.mult_matrix(v) * qa.mult_matrix(v);
    Rational exact1 = qa.mult_matrix(v).trace(), exact2 = sq.trace();
    Complex s1 = 0, s2 = 0;
    double mag = 1.0;
    for (const auto& z : out.zeros) {
      s1 += static_cast<double>(z.multiplicity) * z.coordinates[v];
      s2 += static_cast<double>(z.multiplicity) * z.coordinates[v] * z.coordinates[v];
      mag = std::max(mag, std::norm(z.coordinates[v]) * z.multiplicity);
    }
    if (std::abs(s1 - exact1.get_d()) > 1e-6 * mag || std::abs(s2 - exact2.get_d()) > 1e-6 * mag * mag)
      throw RerandomizeError("coordinate power sums disagree with exact traces; reseed the separating form");
  }

  for (auto& z : out.zeros) {
    std::vector<Rational> q;
    for (const auto& c : z.coordinates) {
      auto r = snap_rational(c);
      if (!r) break;
      q.push_back(*r);
    }
    if (q.size() != n) continue;
    bool vanishes = std::all_of(equations.begin(), equations.end(),
                                [&](const Poly& e) { return sgn(eval_exact(e, q)) == 0; });
    if (vanishes) {
      for (std::size_t v = 0; v < n; ++v) z.coordinates[v] = Complex(q[v].get_d(), 0.0);
      z.exact = std::move(q);
    }
  }
  // Deterministic order: by real parts, then imaginary parts.
  std::sort(out.zeros.begin(), out.zeros.end(), [](const AffineZero& a, const AffineZero& b) {
    for (std::size_t v = 0; v < a.coordinates.size(); ++v) {
      if (std::abs(a.coordinates[v].real() - b.coordinates[v].real()) > 1e-9)
        return a.coordinates[v].real() < b.coordinates[v].real();
      if (std::abs(a.coordinates[v].imag() - b.coordinates[v].imag()) > 1e-9)
        return a.coordinates[v].imag() < b.coordinates[v].imag();
    }
    return false;
  });
  return out;
}

ZeroSet solve_zeros_retry(const QuotientAlgebra& qa, std::span<const Poly> equations, const SolveOptions& opts,
                          int attempts) {
  SolveOptions o = opts;
  for (int a = 0;; ++a) {
    try {
      return solve_zeros(qa, equations, o);
    } catch (const RerandomizeError&) {
      if (a + 1 >= attempts) throw;
      ++o.seed;
    }
  }
}

ZeroSet solve_zeros(const PolyMap& f, const SolveOptions& opts) {
  QuotientAlgebra qa = build_quotient(f);
  return solve_zeros(qa, f.components(), opts);
}

Eliminant eliminant(const QuotientAlgebra& qa, std::size_t var) {
  const std::size_t n = qa.nvars();
  auto poly = krylov_minimal_polynomial(qa.mult_matrix(var), qa.coords(Poly::constant(n, Rational(1))));
  Eliminant e;
  e.variable = var;
  e.poly = UPoly(poly);
  e.as_poly = e.poly.to_poly(n, var);
  return e;
}

Eliminant eliminant(const PolyMap& f, std::size_t var) { return eliminant(build_quotient(f), var); }

}  // namespace nejac
