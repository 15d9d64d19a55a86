#ifndef NEJAC_RATIONAL_HPP
#define NEJAC_RATIONAL_HPP

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <string>

namespace nejac {

using Rational = mpq_class;
using Complex = std::complex<double>;

/// "p/q" or "p" for integers.
std::string to_string(const Rational& q);

/// Parses "p" or "p/q"; throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(const std::string& text);

inline double to_double(const Rational& q) { return q.get_d(); }

inline Complex to_complex(const Rational& q) { return {q.get_d(), 0.0}; }

/// Best rational approximation of x with denominator <= max_den (continued fractions).
Rational best_rational(double x, long max_den);

/// Rounds a complex float to a nearby rational when |z - q| <= tol and the
/// denominator of q is at most max_den. Returns nothing otherwise.
std::optional<Rational> snap_rational(Complex z, double tol = 1e-9, long max_den = 1000000);

}  // namespace nejac

#endif
