#include "nejac/upoly.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nejac {

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

int UPoly::degree() const {
  if (c_.empty()) throw std::domain_error("degree of the zero polynomial is undefined");
  return static_cast<int>(c_.size()) - 1;
}

UPoly UPoly::monic() const {
  if (c_.empty()) return *this;
  std::vector<Rational> r = c_;
  const Rational l = c_.back();
  for (auto& x : r) x /= l;
  return UPoly(std::move(r));
}

UPoly UPoly::derivative() const {
  std::vector<Rational> r;
  for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * static_cast<long>(i));
  return UPoly(std::move(r));
}

Rational UPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  return UPoly(std::move(r));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
  return UPoly(std::move(r));
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  std::vector<Rational> rem = a.c_;
  const std::size_t db = b.c_.size() - 1;
  if (rem.size() <= db) return {UPoly(), a};
  std::vector<Rational> quo(rem.size() - db, Rational(0));
  for (std::size_t k = rem.size(); k-- > db;) {
    if (sgn(rem[k]) == 0) continue;
    Rational q = rem[k] / b.c_.back();
    quo[k - db] = q;
    for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] -= q * b.c_[j];
  }
  rem.resize(db);
  return {UPoly(std::move(quo)), UPoly(std::move(rem))};
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly UPoly::to_poly(std::size_t nvars, std::size_t var) const {
  Poly p(nvars);
  for (std::size_t i = 0; i < c_.size(); ++i) p.add_term(Monomial::variable(nvars, var, static_cast<int>(i)), c_[i]);
  return p;
}

std::vector<UPoly> squarefree_decomposition(const UPoly& p) {
  if (p.is_zero()) throw std::domain_error("square-free decomposition of zero");
  std::vector<UPoly> out;
  if (p.degree() == 0) return out;
  UPoly a = p.monic();
  UPoly b = gcd(a, a.derivative());
  UPoly c = divmod(a, b).first;
  UPoly d = divmod(a.derivative(), b).first - c.derivative();
  while (!(c.degree() == 0)) {
    UPoly s = gcd(c, d);
    out.push_back(s);
    c = divmod(c, s).first;
    d = divmod(d, s).first - c.derivative();
  }
  return out;
}

std::vector<Complex> numeric_roots(const UPoly& p) {
  const int n = p.degree();
  if (n == 0) return {};
  UPoly m = p.monic();
  std::vector<Complex> roots;
  if (n == 1) {
    roots.emplace_back(-m.coeffs()[0].get_d(), 0.0);
    return roots;
  }
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -m.coeffs()[i].get_d();
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
  using LC = std::complex<long double>;
  std::vector<LC> lc;
  for (const auto& c : m.coeffs()) lc.emplace_back(static_cast<long double>(c.get_d()), 0.0L);
  std::vector<LC> dc;
  for (std::size_t i = 1; i < lc.size(); ++i) dc.push_back(lc[i] * static_cast<long double>(i));
  auto horner = [](const std::vector<LC>& cs, LC x) {
    LC acc = 0;
    for (std::size_t i = cs.size(); i-- > 0;) acc = acc * x + cs[i];
    return acc;
  };
  const auto& ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    LC start(ev(i).real(), ev(i).imag());
    long double gap = std::numeric_limits<long double>::infinity();
    for (Eigen::Index j = 0; j < ev.size(); ++j)
      if (j != i) gap = std::min(gap, static_cast<long double>(std::abs(ev(i) - ev(j))));
    LC x = start;
    for (int it = 0; it < 60; ++it) {
      LC fx = horner(lc, x), dfx = horner(dc, x);
      if (std::abs(dfx) == 0.0L) break;
      LC step = fx / dfx;
      x -= step;
      if (std::abs(step) <= 1e-19L * std::max(1.0L, std::abs(x))) break;
    }
    // Newton must not wander to a neighbouring root.
    if (!(std::abs(x - start) < 0.25L * gap)) x = start;
    roots.emplace_back(static_cast<double>(x.real()), static_cast<double>(x.imag()));
  }
  return roots;
}

}  // namespace nejac
