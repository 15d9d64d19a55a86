#ifndef NEJAC_TEST_SUPPORT_HPP
#define NEJAC_TEST_SUPPORT_HPP

#include "nejac/parse.hpp"
#include "nejac/poly.hpp"
#include "nejac/quotient.hpp"

#include <string>
#include <vector>

namespace nejac::testing {

inline Poly P(const std::string& s, std::size_t n = 2) { return parse_poly(s, n); }

inline PolyMap system_of(const std::vector<std::string>& polys) {
  std::vector<Poly> comps;
  for (const auto& s : polys) comps.push_back(parse_poly(s, polys.size()));
  return PolyMap(std::move(comps));
}

// The five named systems used throughout the test suites.
inline PolyMap S1() { return system_of({"Z1", "Z2"}); }
inline PolyMap S2() { return system_of({"Z1^2 - 1", "Z2^2 - 1"}); }
inline PolyMap S3() { return system_of({"Z1^2 - Z2", "Z1*Z2"}); }
inline PolyMap S4() { return system_of({"Z1^2 - 1", "Z1*Z2 + Z2^2"}); }
inline PolyMap S5() { return system_of({"Z1^2 - 1", "Z1*Z2"}); }

// Dense random polynomial with small integer coefficients.
inline Poly random_poly(SeededInts& rng, std::size_t nvars, int degree, long coeff_bound = 3, double density = 1.0) {
  Poly p(nvars);
  std::vector<int> e(nvars, 0);
  // Enumerate all exponent vectors of total degree <= degree.
  auto rec = [&](auto&& self, std::size_t v, int left) -> void {
    if (v == nvars) {
      if (rng.next_unit() <= density) p.add_term(Monomial(e), Rational(rng.next(-coeff_bound, coeff_bound)));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[v] = k;
      self(self, v + 1, left - k);
    }
    e[v] = 0;
  };
  rec(rec, 0, degree);
  return p;
}

}  // namespace nejac::testing

#endif
