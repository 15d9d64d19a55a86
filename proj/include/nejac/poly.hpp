#ifndef NEJAC_POLY_HPP
#define NEJAC_POLY_HPP

#include "nejac/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nejac {

// Exponent vector of fixed length. Ordered lexicographically on the raw
// vector, which is the canonical storage order of polynomial terms.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<int> exps) : exps_(std::move(exps)) {
    for (int e : exps_)
      if (e < 0) throw std::invalid_argument("negative exponent");
  }

  static Monomial variable(std::size_t nvars, std::size_t index, int power = 1) {
    Monomial m(nvars);
    m.exps_.at(index) = power;
    return m;
  }

  std::size_t nvars() const { return exps_.size(); }
  int operator[](std::size_t i) const { return exps_[i]; }
  int& operator[](std::size_t i) { return exps_[i]; }
  const std::vector<int>& exponents() const { return exps_; }

  int degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }
  bool is_one() const {
    return std::all_of(exps_.begin(), exps_.end(), [](int e) { return e == 0; });
  }

  bool divides(const Monomial& other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }

  bool coprime(const Monomial& other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
      if (exps_[i] > 0 && other.exps_[i] > 0) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < r.exps_.size(); ++i) r.exps_[i] += b.exps_[i];
    return r;
  }

  // Requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < r.exps_.size(); ++i) {
      r.exps_[i] -= b.exps_[i];
      if (r.exps_[i] < 0) throw std::domain_error("monomial division is not exact");
    }
    return r;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (std::size_t i = 0; i < r.exps_.size(); ++i) r.exps_[i] = std::max(r.exps_[i], b.exps_[i]);
    return r;
  }

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

 private:
  std::vector<int> exps_;
};

namespace detail {
inline bool coeff_is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool coeff_is_zero(const Complex& c) { return c == Complex(0.0, 0.0); }

template <class Out, class In>
Out coeff_cast(const In& c) {
  if constexpr (std::is_same_v<Out, In>) {
    return c;
  } else if constexpr (std::is_same_v<In, Rational> && std::is_same_v<Out, Complex>) {
    return Complex(c.get_d(), 0.0);
  } else if constexpr (std::is_same_v<In, Rational>) {
    return static_cast<Out>(c.get_d());
  } else {
    static_assert(std::is_same_v<Out, In>, "unsupported coefficient conversion");
  }
}
}  // namespace detail

// Sparse multivariate polynomial with coefficients in C (Rational or Complex).
// Never stores a zero coefficient.
template <class C>
class BasicPoly {
 public:
  using Coeff = C;
  using TermMap = std::map<Monomial, C>;

  BasicPoly() = default;
  explicit BasicPoly(std::size_t nvars) : nvars_(nvars) {}

  static BasicPoly constant(std::size_t nvars, const C& c) {
    BasicPoly p(nvars);
    p.add_term(Monomial(nvars), c);
    return p;
  }
  static BasicPoly variable(std::size_t nvars, std::size_t index) {
    BasicPoly p(nvars);
    p.add_term(Monomial::variable(nvars, index), C(1));
    return p;
  }
  static BasicPoly term(const Monomial& m, const C& c) {
    BasicPoly p(m.nvars());
    p.add_term(m, c);
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one()); }

  C coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? C(0) : it->second;
  }
  C constant_term() const { return coeff(Monomial(nvars_)); }

  void add_term(const Monomial& m, const C& c) {
    if (m.nvars() != nvars_) throw std::invalid_argument("monomial arity does not match polynomial");
    if (detail::coeff_is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (detail::coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  // Total degree; the zero polynomial has no degree and throws.
  int degree() const {
    if (is_zero()) throw std::domain_error("degree of the zero polynomial is undefined");
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }
  std::optional<int> degree_or_none() const {
    if (is_zero()) return std::nullopt;
    return degree();
  }
  // Lowest total degree of a term (order at the origin).
  int order() const {
    if (is_zero()) throw std::domain_error("order of the zero polynomial is undefined");
    int d = terms_.begin()->first.degree();
    for (const auto& [m, c] : terms_) d = std::min(d, m.degree());
    return d;
  }
  int degree_in(std::size_t var) const {
    if (is_zero()) throw std::domain_error("degree of the zero polynomial is undefined");
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
    return d;
  }

  BasicPoly homogeneous_part(int deg) const {
    BasicPoly r(nvars_);
    for (const auto& [m, c] : terms_)
      if (m.degree() == deg) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
  }
  BasicPoly leading_form() const { return homogeneous_part(degree()); }
  BasicPoly lowest_form() const { return homogeneous_part(order()); }
  bool is_homogeneous() const {
    if (is_zero()) return true;
    return degree() == order();
  }

  BasicPoly operator-() const {
    BasicPoly r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  BasicPoly& operator+=(const BasicPoly& o) {
    check_arity(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  BasicPoly& operator-=(const BasicPoly& o) {
    check_arity(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  BasicPoly& operator*=(const C& s) {
    if (detail::coeff_is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  friend BasicPoly operator+(BasicPoly a, const BasicPoly& b) { return a += b; }
  friend BasicPoly operator-(BasicPoly a, const BasicPoly& b) { return a -= b; }
  friend BasicPoly operator*(BasicPoly a, const C& s) { return a *= s; }
  friend BasicPoly operator*(const C& s, BasicPoly a) { return a *= s; }
  friend BasicPoly operator*(const BasicPoly& a, const BasicPoly& b) {
    a.check_arity(b);
    BasicPoly r(a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  BasicPoly& operator*=(const BasicPoly& o) { return *this = *this * o; }

  // Multiplication by a monomial times a scalar.
  BasicPoly shifted(const Monomial& m, const C& s = C(1)) const {
    BasicPoly r(nvars_);
    if (detail::coeff_is_zero(s)) return r;
    for (const auto& [t, c] : terms_) r.terms_.emplace(t * m, c * s);
    return r;
  }

  BasicPoly pow(unsigned k) const {
    BasicPoly result = constant(nvars_, C(1));
    BasicPoly base = *this;
    while (k > 0) {
      if (k & 1U) result *= base;
      k >>= 1U;
      if (k > 0) base *= base;
    }
    return result;
  }

  BasicPoly derivative(std::size_t var) const {
    BasicPoly r(nvars_);
    for (const auto& [m, c] : terms_) {
      if (m[var] == 0) continue;
      Monomial d(m);
      d[var] -= 1;
      r.add_term(d, c * C(m[var]));
    }
    return r;
  }

  // Substitutes variable i by images[i]; all images share one arity.
  BasicPoly compose(std::span<const BasicPoly> images) const {
    if (images.size() != nvars_) throw std::invalid_argument("compose: wrong number of images");
    std::size_t m = images.empty() ? 0 : images[0].nvars();
    for (const auto& img : images)
      if (img.nvars() != m) throw std::invalid_argument("compose: images of mixed arity");
    // Cache powers per variable.
    std::vector<std::vector<BasicPoly>> powers(nvars_);
    BasicPoly r(m);
    for (const auto& [mono, c] : terms_) {
      BasicPoly t = constant(m, c);
      for (std::size_t i = 0; i < nvars_; ++i) {
        int e = mono[i];
        if (e == 0) continue;
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(constant(m, C(1)));
        while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * images[i]);
        t *= cache[e];
      }
      r += t;
    }
    return r;
  }

  template <class Out>
  Out eval(std::span<const Out> point) const {
    if (point.size() != nvars_) throw std::invalid_argument("evaluation point has wrong dimension");
    Out acc(0);
    for (const auto& [m, c] : terms_) {
      Out t = detail::coeff_cast<Out>(c);
      for (std::size_t i = 0; i < nvars_; ++i)
        for (int e = 0; e < m[i]; ++e) t *= point[i];
      acc += t;
    }
    return acc;
  }

  template <class Out>
  BasicPoly<Out> cast() const {
    BasicPoly<Out> r(nvars_);
    for (const auto& [m, c] : terms_) r.add_term(m, detail::coeff_cast<Out>(c));
    return r;
  }

  bool operator==(const BasicPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

 private:
  void check_arity(const BasicPoly& o) const {
    if (o.nvars_ != nvars_) throw std::invalid_argument("polynomials in different numbers of variables");
  }

  std::size_t nvars_ = 0;
  TermMap terms_;
};

using Poly = BasicPoly<Rational>;
using CPoly = BasicPoly<Complex>;

/// Drops complex terms whose modulus is at most rel_tol times the largest coefficient.
CPoly pruned(const CPoly& p, double rel_tol);

Complex eval(const Poly& p, std::span<const Complex> z);
Rational eval_exact(const Poly& p, std::span<const Rational> z);

// Homogeneous form in n+1 variables; variable 0 is the homogenizing Z0.
struct HForm {
  Poly form;
  int degree = 0;
};

HForm homogenize(const Poly& p);
Poly dehomogenize(const HForm& h);

// Square polynomial map F = (F1, ..., Fn) in n variables, no zero component.
class PolyMap {
 public:
  PolyMap() = default;
  explicit PolyMap(std::vector<Poly> components);

  std::size_t size() const { return comps_.size(); }
  std::size_t nvars() const { return comps_.size(); }
  const Poly& operator[](std::size_t i) const { return comps_[i]; }
  const std::vector<Poly>& components() const { return comps_; }
  const std::vector<int>& degrees() const { return degrees_; }
  long long bezout_number() const;
  int degree_excess() const;  // sum of (d_i - 1)
  int min_degree() const;

 private:
  std::vector<Poly> comps_;
  std::vector<int> degrees_;
};

template <class C>
BasicPoly<C> determinant(const std::vector<std::vector<BasicPoly<C>>>& m, std::size_t nvars);

Poly jacobian(const PolyMap& f);
std::vector<std::vector<Poly>> jacobian_matrix(const PolyMap& f);

// All monomials of total degree exactly d (resp. at most d) in nvars variables,
// ascending by degree and then by exponent vector.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, int d);
std::vector<Monomial> monomials_up_to(std::size_t nvars, int d);

/// Default variable names Z1..Zn (or Z0..Zn for forms when with_z0).
std::vector<std::string> default_names(std::size_t nvars, bool with_z0 = false);

std::string to_string(const Monomial& m, const std::vector<std::string>& names);
std::string to_string(const Poly& p, const std::vector<std::string>& names);
std::string to_string(const Poly& p);
std::string to_string(const HForm& h);

}  // namespace nejac

#endif
