#ifndef NEJAC_GROWTH_HPP
#define NEJAC_GROWTH_HPP

#include "nejac/noether.hpp"
#include "nejac/poly.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace nejac {

// 7 log-spaced radii from 10^0.5 to 10^3.
std::vector<double> default_radii();

struct GrowthOptions {
  std::vector<double> radii = default_radii();
  int samples = 500;
  int refinements = 20;
  int refine_starts = 3;  // best samples handed to coordinate descent
  // When nu = 0, move the radii up to the onset radius 2L/c0 if they start below it.
  bool adaptive = true;
  std::uint64_t seed = 0;
};

struct GrowthReport {
  std::string label = "consistency evidence";
  int exponent_claimed = 0;      // min d_i - nu
  long long exponent_deficit = 0;    // mu - prod d_i + min d_i
  double exponent_fitted = 0.0;  // least-squares slope of log min|F| against log R
  double fitted_stderr = 0.0;
  double band_low = 0.0, band_high = 0.0;  // slope +- 2 standard errors
  double constant_c = 0.0;  // min over radii of min|F| / R^claimed
  double radius_r = 0.0;    // smallest radius sampled
  std::optional<double> leading_min;   // c0: min of max|H_i| on the unit sphere (nu = 0 only)
  std::optional<double> onset_radius;  // 2L/c0
  std::vector<double> radii;
  std::vector<double> min_values;
  std::vector<std::vector<Complex>> argmins;
  // Max-norm direction z/|z| of the minimiser at the largest radius, when |F| stays bounded.
  std::optional<std::vector<Complex>> bounded_direction;
  bool consistent = false;      // fitted >= claimed - 0.15
  bool consistent_deficit = false;  // fitted >= exponent_deficit - 0.15
  std::uint64_t seed = 0;
};

// max_i |F_i(z)|
double max_abs(const std::vector<CPoly>& f, const std::vector<Complex>& z);

GrowthReport growth_scan(const PolyMap& f, int nu, long long mu, const GrowthOptions& opts = {});
GrowthReport growth_scan(const PolyMap& f, int nu, const std::vector<double>& radii, int samples, std::uint64_t seed);

struct ProperVerdict {
  std::string verdict;  // "proper (certified)" or "criterion inconclusive"
  bool certified = false;
  std::optional<double> slope;
  std::optional<std::vector<Complex>> bounded_direction;
};

ProperVerdict properness_verdict(const PolyMap& f, const NoetherReport& report, const GrowthReport* growth = nullptr);

// "radius,min_abs_F" rows.
void write_growth_csv(const GrowthReport& r, std::ostream& os);

}  // namespace nejac

#endif
