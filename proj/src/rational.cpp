#include "nejac/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace nejac {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& text) {
  auto valid_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!valid_int(num) || !valid_int(den)) throw std::invalid_argument("malformed rational: " + text);
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator: " + text);
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Rational best_rational(double x, long max_den) {
  if (!std::isfinite(x)) throw std::domain_error("best_rational: non-finite input");
  // Convergents h/k of the continued fraction of x.
  mpz_class h_prev = 1, h = static_cast<long>(std::floor(x));
  mpz_class k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  for (int iter = 0; iter < 64 && frac > 1e-15; ++iter) {
    double inv = 1.0 / frac;
    long a = static_cast<long>(std::floor(inv));
    frac = inv - static_cast<double>(a);
    mpz_class h_next = a * h + h_prev;
    mpz_class k_next = a * k + k_prev;
    if (k_next > max_den) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  Rational q(h, k);
  q.canonicalize();
  return q;
}

std::optional<Rational> snap_rational(Complex z, double tol, long max_den) {
  if (std::abs(z.imag()) > tol || !std::isfinite(z.real())) return std::nullopt;
  if (std::abs(z.real()) > 1e12) return std::nullopt;
  Rational q = best_rational(z.real(), max_den);
  if (std::abs(q.get_d() - z.real()) > tol) return std::nullopt;
  return q;
}

}  // namespace nejac
