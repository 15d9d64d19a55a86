#ifndef NEJAC_PROJECTIVE_HPP
#define NEJAC_PROJECTIVE_HPP

#include "nejac/dual.hpp"
#include "nejac/poly.hpp"
#include "nejac/quotient.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nejac {

class InfiniteZeroSet : public std::runtime_error {
 public:
  explicit InfiniteZeroSet(const std::string& detail)
      : std::runtime_error("F does not have a finite number of zeros (" + detail + ")") {}
};

// Point of P^n with coordinates (Z0 : Z1 : ... : Zn), first nonzero coordinate 1.
struct ProjPoint {
  std::vector<Complex> coords;
  std::optional<std::vector<Rational>> exact;
  bool is_rational() const { return exact.has_value(); }
};

std::string to_string(const ProjPoint& p);

// Affine chart centred at a point at infinity: Z0 = W1, Z_pivot = 1 and
// Z_k = W_m + c_k for the remaining k, in increasing order of k (m = 2, 3, ...).
struct ChartMap {
  std::size_t pivot = 1;                 // homogeneous index in 1..n
  std::vector<std::size_t> w_to_z;       // w_to_z[m] = homogeneous index behind W_{m+1}; w_to_z[0] = 0
  std::vector<Complex> translation;      // c_k for w_to_z[1..], numeric
  std::optional<std::vector<Rational>> exact_translation;
};

struct InfinityPoint {
  ProjPoint point;
  ChartMap chart;
  std::vector<Poly> local_system;            // F_i* when the point is rational
  std::vector<CPoly> local_system_numeric;   // F_i* in floating point (always filled)
  int local_mult = 0;
  bool numeric() const { return !point.is_rational(); }
};

// Local chart images of the homogenized components at the point.
std::vector<Poly> chart_system(const PolyMap& f, const ChartMap& chart);
std::vector<CPoly> chart_system_numeric(const PolyMap& f, const ChartMap& chart);
Poly chart_image(const HForm& h, const ChartMap& chart);
CPoly chart_image_numeric(const HForm& h, const ChartMap& chart);

// Chart coordinates W of an affine point z (requires z_pivot != 0).
std::vector<Complex> chart_coordinates(const ChartMap& chart, const std::vector<Complex>& z);

std::vector<std::string> chart_names(std::size_t n);  // W1..Wn

// Common projective zeros of the leading forms, with charts, local systems
// and local intersection numbers.
std::vector<InfinityPoint> zeros_at_infinity(const PolyMap& f, const SolveOptions& opts = {});

// Dual space of F* at the chart origin (exact for rational points).
DualSpace local_dual_space(const InfinityPoint& p, int cap);
int intersection_number_at(const PolyMap& f, const InfinityPoint& p);

bool meet_transversally_at(const PolyMap& f, const InfinityPoint& p);

struct TangentConeData {
  std::vector<int> orders;              // ord_p of each component
  std::vector<std::string> cones;       // lowest forms, printed in W1..Wn
  bool distinct = false;                // pairwise coprime lowest forms
  bool condition_ii = false;            // ord_p F~_i != d_i for every i
};

TangentConeData tangent_cone_data(const PolyMap& f, const InfinityPoint& p);

// Exact test: do two nonzero polynomials have no common nonconstant factor?
bool coprime(const Poly& a, const Poly& b);
// Numeric test for homogeneous forms via the Sylvester matrix on a random 2-plane.
bool coprime_forms_numeric(const CPoly& a, const CPoly& b, std::uint64_t seed = 0);

// Affine zero-dimensionality and finiteness of the leading-form zero set.
bool has_finite_zeros(const PolyMap& f);

}  // namespace nejac

#endif
