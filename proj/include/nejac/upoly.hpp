#ifndef NEJAC_UPOLY_HPP
#define NEJAC_UPOLY_HPP

#include "nejac/poly.hpp"
#include "nejac/rational.hpp"

#include <utility>
#include <vector>

namespace nejac {

// Dense univariate polynomial over Q, coefficients low to high, no trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);

  bool is_zero() const { return c_.empty(); }
  int degree() const;  // throws on zero
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& lead() const { return c_.back(); }

  UPoly monic() const;
  UPoly derivative() const;
  Rational eval(const Rational& x) const;

  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  // Quotient and remainder.
  friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
  friend UPoly gcd(UPoly a, UPoly b);  // monic

  // Lift to a polynomial in `nvars` variables, in variable `var`.
  Poly to_poly(std::size_t nvars, std::size_t var) const;

 private:
  void trim();
  std::vector<Rational> c_;
};

// Yun's square-free factorization: p = lead * prod_k s_k^k with s_k monic,
// square-free and pairwise coprime. Entry k-1 holds s_k (possibly 1).
std::vector<UPoly> squarefree_decomposition(const UPoly& p);

// Complex roots of a square-free polynomial (companion eigenvalues, Newton polished).
std::vector<Complex> numeric_roots(const UPoly& p);

}  // namespace nejac

#endif
