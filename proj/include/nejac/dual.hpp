#ifndef NEJAC_DUAL_HPP
#define NEJAC_DUAL_HPP

#include "nejac/linalg.hpp"
#include "nejac/poly.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace nejac {

class DualSpaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Local dual space at the origin of an ideal (f_1, ..., f_m). A functional
// is stored by its coefficients lambda over `columns`, acting as
//   L(g) = sum_a lambda_a * coeff of W^a in g,
// i.e. lambda_a stands for the differential operator d^a / a! at 0.
struct DualSpace {
  std::size_t nvars = 0;
  int max_degree = -1;           // highest order of a functional; -1 when the space is zero
  std::vector<Monomial> columns;  // all monomials of degree <= max_degree
  bool numeric = false;
  std::vector<std::vector<Rational>> exact_basis;  // when !numeric
  Eigen::MatrixXcd numeric_basis;                 // columns.size() x dim, orthonormal, when numeric
  double tol = 0.0;

  std::size_t dimension() const { return numeric ? static_cast<std::size_t>(numeric_basis.cols()) : exact_basis.size(); }
  // Index of a monomial among the columns, or -1 when its degree exceeds max_degree.
  long column_of(const Monomial& m) const;
};

// Macaulay construction degree by degree until the dimension stabilizes.
// Throws DualSpaceError when no stabilization occurs up to degree `cap`.
DualSpace dual_space(const std::vector<Poly>& local_system, int cap);
DualSpace dual_space(const std::vector<CPoly>& local_system, int cap, double rank_tol = 1e-8);

bool local_membership(const Poly& g, const DualSpace& d);
bool local_membership(const CPoly& g, const DualSpace& d);

// Functionals as polynomials in the dual variables D1..Dn (exact spaces only).
std::vector<std::string> describe_functionals(const DualSpace& d, const std::vector<std::string>& names);

}  // namespace nejac

#endif
