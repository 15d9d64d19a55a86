#ifndef NEJAC_DIVISION_HPP
#define NEJAC_DIVISION_HPP

#include "nejac/groebner.hpp"
#include "nejac/poly.hpp"

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace nejac {

// what() is "not in ideal" or "bound violated".
class DivisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DegreeAudit {
  std::optional<int> degree;  // deg A_i F_i, absent when A_i = 0
  int bound = 0;
  bool within = true;
};

struct DivisionCertificate {
  Poly p;
  std::vector<Poly> cofactors;
  std::vector<DegreeAudit> audit;
  int nu = 0;
  int bound_used = 0;  // deg P + nu
  bool verified = false;
};

// Exact re-expansion of the certificate: sum A_i F_i == P and every degree within the bound.
bool verify_certificate(const DivisionCertificate& c, const PolyMap& f);

// Cofactors with deg A_i F_i <= deg P + nu from one bounded-degree linear solve.
// Free unknowns are zero after a deterministic RREF, then nonzero terms are
// reduced greedily along the null space.
class Divider {
 public:
  explicit Divider(PolyMap f);

  const PolyMap& map() const { return f_; }
  bool in_ideal(const Poly& p) const;

  DivisionCertificate divide(const Poly& p, int nu);
  // Polynomials sharing a degree budget share one elimination.
  std::vector<DivisionCertificate> divide_all(std::span<const Poly> ps, int nu);

  // Size of the last linear system solved (rows, unknowns).
  std::pair<std::size_t, std::size_t> last_system_size() const { return last_size_; }

 private:
  PolyMap f_;
  GroebnerBasis gb_;
  std::pair<std::size_t, std::size_t> last_size_{0, 0};
};

DivisionCertificate divide_with_bound(const Poly& p, const PolyMap& f, int nu);

}  // namespace nejac

#endif
