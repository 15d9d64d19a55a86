#ifndef NEJAC_QUOTIENT_HPP
#define NEJAC_QUOTIENT_HPP

#include "nejac/groebner.hpp"
#include "nejac/linalg.hpp"
#include "nejac/poly.hpp"
#include "nejac/upoly.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace nejac {

class NotZeroDimensional : public std::runtime_error {
 public:
  explicit NotZeroDimensional(std::size_t variable)
      : std::runtime_error("ideal is not zero-dimensional: no pure power of Z" + std::to_string(variable + 1) +
                           " among the leading monomials"),
        variable_(variable) {}
  std::size_t variable() const { return variable_; }

 private:
  std::size_t variable_;
};

// Raised when a random linear form failed to separate the zeros; retry with another seed.
class RerandomizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Variable with no pure power among the leading monomials, if any.
std::optional<std::size_t> non_zero_dimensional_witness(const GroebnerBasis& gb);
bool is_zero_dimensional(const PolyMap& f);

// Q[Z]/I for a zero-dimensional ideal I given by a degrevlex basis.
class QuotientAlgebra {
 public:
  explicit QuotientAlgebra(GroebnerBasis gb);

  const GroebnerBasis& groebner_basis() const { return gb_; }
  std::size_t nvars() const { return gb_.nvars(); }
  std::size_t mu() const { return basis_.size(); }
  const std::vector<Monomial>& basis() const { return basis_; }
  // Multiplication by Z_i; column j holds the coordinates of Z_i * b_j.
  const QMatrix& mult_matrix(std::size_t var) const { return mult_.at(var); }
  QMatrix mult_matrix(const Poly& h) const;

  std::vector<Rational> coords(const Poly& p) const;
  Poly from_coords(const std::vector<Rational>& v) const;
  Rational trace(const Poly& h) const;
  // tr(M_{b_c}) for every basis element.
  const std::vector<Rational>& trace_vector() const;

 private:
  GroebnerBasis gb_;
  std::vector<Monomial> basis_;
  std::map<Monomial, std::size_t> index_;
  std::vector<QMatrix> mult_;
  mutable std::optional<std::vector<Rational>> traces_;
};

QuotientAlgebra build_quotient(std::span<const Poly> gens);
QuotientAlgebra build_quotient(const PolyMap& f);

struct AffineZero {
  std::vector<Complex> coordinates;
  int multiplicity = 1;
  std::optional<std::vector<Rational>> exact;
  bool is_rational() const { return exact.has_value(); }
};

struct SolveOptions {
  double tol = 1e-8;
  std::uint64_t seed = 0;
};

struct ZeroSet {
  std::vector<AffineZero> zeros;
  std::vector<Rational> combination;  // coefficients of the separating linear form
  std::uint64_t seed = 0;
};

// Zeros of the ideal behind `qa` with multiplicities; `equations` are used
// for residual checks, Newton polishing (square case) and rational certification.
ZeroSet solve_zeros(const QuotientAlgebra& qa, std::span<const Poly> equations, const SolveOptions& opts);
ZeroSet solve_zeros(const PolyMap& f, const SolveOptions& opts = {});

// Tries seeds opts.seed, opts.seed+1, ... until the separating form works.
ZeroSet solve_zeros_retry(const QuotientAlgebra& qa, std::span<const Poly> equations, const SolveOptions& opts,
                          int attempts = 8);

struct Eliminant {
  std::size_t variable = 0;
  UPoly poly;      // monic, in Z_variable
  Poly as_poly;    // same, in all n variables
};

Eliminant eliminant(const QuotientAlgebra& qa, std::size_t var);
Eliminant eliminant(const PolyMap& f, std::size_t var);

// Seeded integer source shared by the randomized steps. Maps raw engine
// output directly so results do not depend on the standard library's
// distribution implementations.
class SeededInts {
 public:
  explicit SeededInts(std::uint64_t seed);
  // Uniform integer in [lo, hi].
  long next(long lo, long hi);
  // Nonzero integer in [-bound, bound].
  long next_nonzero(long bound);
  double next_unit();  // [0, 1)

 private:
  std::mt19937_64 engine_;
};

}  // namespace nejac

#endif
