#ifndef NEJAC_NOETHER_HPP
#define NEJAC_NOETHER_HPP

#include "nejac/dual.hpp"
#include "nejac/projective.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nejac {

struct NoetherBounds {
  long long upper_12 = 0;
  long long upper_13 = 0;
  std::optional<long long> lower_21;  // absent when F has no affine zero
};

struct NoetherCriteria {
  bool a4 = false;  // transversal at p and p in V(H0)
  bool a5 = false;  // ord_p H0 >= (H1, ..., Hn)_p
  bool a6 = false;  // distinct tangent cones and ord_p H0 >= sum (ord_p Hi - 1) + 1
  bool any() const { return a4 || a5 || a6; }
};

struct PointReport {
  InfinityPoint point;
  int min_exponent = 0;
  bool transversal = false;
  TangentConeData cones;
  std::vector<std::string> functionals;   // exact dual basis, empty for numeric points
  std::map<int, NoetherCriteria> criteria;  // keyed by the exponent of H0 = Z0^k
};

struct NoetherReport {
  int nu = 0;
  std::size_t mu = 0;
  long long bezout = 0;
  std::size_t k = 0;  // number of points at infinity
  NoetherBounds bounds;
  std::vector<PointReport> points;
  long long deficit_sum = 0;  // sum of local intersection numbers
  bool bezout_deficit_holds = false;
};

NoetherBounds noether_bounds(const PolyMap& f, std::size_t mu, std::size_t k);
NoetherBounds noether_bounds(const PolyMap& f);

// Least nu with W1^nu in the local ideal of F* at the chart origin.
int point_exponent(const DualSpace& d, int cap);

NoetherCriteria noether_condition_criteria(const HForm& h0, const PolyMap& f, const InfinityPoint& p);

NoetherReport noether_exponent(const PolyMap& f, const SolveOptions& opts = {});

}  // namespace nejac

#endif
