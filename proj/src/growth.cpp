#include "nejac/growth.hpp"

#include "nejac/quotient.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nejac {

namespace {

struct Candidate {
  double value;
  std::size_t face;
  std::vector<Complex> z;
};

// Keeps the face coordinate on |z_k| = R and the others in the disk |z_j| <= R.
void project(std::vector<Complex>& z, std::size_t face, double r) {
  z[face] = std::polar(r, std::arg(z[face]));
  for (std::size_t j = 0; j < z.size(); ++j)
    if (j != face && std::abs(z[j]) > r) z[j] *= r / std::abs(z[j]);
}

void refine(const std::vector<CPoly>& f, Candidate& c, double r, int rounds) {
  const std::size_t n = c.z.size();
  double step = r / 4;
  for (int round = 0; round < rounds; ++round) {
    for (int sweep = 0; sweep < 200; ++sweep) {
      bool improved = false;
      for (std::size_t j = 0; j < n; ++j) {
        // The face coordinate moves by phase, the others in the plane.
        std::vector<Complex> moves;
        if (j == c.face) {
          double dphi = step / r;
          moves = {std::polar(1.0, dphi), std::polar(1.0, -dphi)};
        } else {
          moves = {Complex(step, 0), Complex(-step, 0), Complex(0, step), Complex(0, -step)};
        }
        for (const auto& mv : moves) {
          auto z = c.z;
          z[j] = j == c.face ? z[j] * mv : z[j] + mv;
          project(z, c.face, r);
          double v = max_abs(f, z);
          if (v < c.value) {
            c.value = v;
            c.z = std::move(z);
            improved = true;
          }
        }
      }
      if (!improved) break;
    }
    step /= 4;
  }
}

// Random points of the max-norm sphere |z| = r, then coordinate descent from the best few.
Candidate minimize_on_sphere(const std::vector<CPoly>& fc, double r, const GrowthOptions& opts, SeededInts& rng) {
  const std::size_t n = fc.front().nvars();
  const double two_pi = 2 * std::numbers::pi;
  std::vector<Candidate> cands;
  for (int s = 0; s < opts.samples; ++s) {
    Candidate c{0.0, static_cast<std::size_t>(rng.next(0, static_cast<long>(n) - 1)), std::vector<Complex>(n)};
    for (std::size_t j = 0; j < n; ++j) {
      double rho = j == c.face ? r : r * std::sqrt(rng.next_unit());
      c.z[j] = std::polar(rho, two_pi * rng.next_unit());
    }
    c.value = max_abs(fc, c.z);
    cands.push_back(std::move(c));
  }
  // Axis-aligned starts: one face at a time with the other coordinates at 0.
  for (std::size_t k = 0; k < n; ++k) {
    Candidate c{0.0, k, std::vector<Complex>(n)};
    c.z[k] = r;
    c.value = max_abs(fc, c.z);
    cands.push_back(std::move(c));
  }
  std::stable_sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
  const std::size_t starts = std::min<std::size_t>(cands.size(), std::max(1, opts.refine_starts));
  for (std::size_t i = 0; i < starts; ++i) refine(fc, cands[i], r, opts.refinements);
  return *std::min_element(cands.begin(), cands.begin() + starts,
                           [](const auto& a, const auto& b) { return a.value < b.value; });
}

}  // namespace

std::vector<double> default_radii() {
  std::vector<double> r;
  for (int k = 0; k < 7; ++k) r.push_back(std::pow(10.0, 0.5 + 2.5 * k / 6.0));
  return r;
}

double max_abs(const std::vector<CPoly>& f, const std::vector<Complex>& z) {
  double m = 0;
  for (const auto& fi : f) m = std::max(m, std::abs(fi.eval<Complex>(z)));
  return m;
}

GrowthReport growth_scan(const PolyMap& f, int nu, long long mu, const GrowthOptions& opts) {
  std::vector<CPoly> fc;
  for (const auto& fi : f.components()) fc.push_back(fi.cast<Complex>());

  GrowthReport rep;
  rep.seed = opts.seed;
  rep.exponent_claimed = f.min_degree() - nu;
  rep.exponent_deficit = mu - f.bezout_number() + f.min_degree();
  rep.radii = opts.radii;
  std::sort(rep.radii.begin(), rep.radii.end());
  rep.radii.erase(std::unique(rep.radii.begin(), rep.radii.end()), rep.radii.end());

  SeededInts rng(opts.seed);

  // With V_inf empty, |F(z)| >= (c0/2)|z|^min d once |z| >= 2L/c0, where c0 is the
  // minimum of max|H_i| over the unit sphere and L bounds the lower-order coefficients.
  if (nu == 0 && opts.adaptive && !rep.radii.empty()) {
    std::vector<CPoly> lead;
    double l = 0;
    for (const auto& fi : f.components()) {
      lead.push_back(fi.leading_form().cast<Complex>());
      double mass = 0;
      for (const auto& [m, c] : fi.terms())
        if (m.degree() < fi.degree()) mass += std::abs(c.get_d());
      l = std::max(l, mass);
    }
    rep.leading_min = minimize_on_sphere(lead, 1.0, opts, rng).value;
    if (*rep.leading_min > 0) {
      rep.onset_radius = 2 * l / *rep.leading_min;
      if (*rep.onset_radius > rep.radii.front()) {
        const double scale = *rep.onset_radius / rep.radii.front();
        for (auto& r : rep.radii) r *= scale;
      }
    }
  }

  for (double r : rep.radii) {
    auto best = minimize_on_sphere(fc, r, opts, rng);
    rep.min_values.push_back(best.value);
    rep.argmins.push_back(best.z);
  }

  // Least squares on (log R, log min|F|).
  const std::size_t m = rep.radii.size();
  double sx = 0, sy = 0;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < m; ++i) {
    xs.push_back(std::log(rep.radii[i]));
    ys.push_back(std::log(std::max(rep.min_values[i], 1e-300)));
    sx += xs.back();
    sy += ys.back();
  }
  if (m >= 2) {
    double mx = sx / m, my = sy / m, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
    }
    rep.exponent_fitted = sxy / sxx;
    double ssr = 0;
    for (std::size_t i = 0; i < m; ++i) {
      double e = ys[i] - (my + rep.exponent_fitted * (xs[i] - mx));
      ssr += e * e;
    }
    rep.fitted_stderr = m > 2 ? std::sqrt(ssr / (m - 2) / sxx) : 0.0;
  }
  rep.band_low = rep.exponent_fitted - 2 * rep.fitted_stderr;
  rep.band_high = rep.exponent_fitted + 2 * rep.fitted_stderr;

  if (m > 0) {
    rep.radius_r = rep.radii.front();
    rep.constant_c = rep.min_values[0] / std::pow(rep.radii[0], rep.exponent_claimed);
    for (std::size_t i = 1; i < m; ++i)
      rep.constant_c = std::min(rep.constant_c, rep.min_values[i] / std::pow(rep.radii[i], rep.exponent_claimed));
    if (rep.exponent_fitted < 0.5) {
      std::vector<Complex> dir = rep.argmins.back();
      for (auto& c : dir) c /= rep.radii.back();
      rep.bounded_direction = dir;
    }
  }
  rep.consistent = rep.exponent_fitted >= rep.exponent_claimed - 0.15;
  rep.consistent_deficit = rep.exponent_fitted >= static_cast<double>(rep.exponent_deficit) - 0.15;
  return rep;
}

GrowthReport growth_scan(const PolyMap& f, int nu, const std::vector<double>& radii, int samples, std::uint64_t seed) {
  GrowthOptions opts;
  opts.radii = radii;
  opts.samples = samples;
  opts.seed = seed;
  return growth_scan(f, nu, static_cast<long long>(build_quotient(f).mu()), opts);
}

ProperVerdict properness_verdict(const PolyMap& f, const NoetherReport& report, const GrowthReport* growth) {
  ProperVerdict v;
  v.certified = report.nu < f.min_degree();
  v.verdict = v.certified ? "proper (certified)" : "criterion inconclusive";
  if (growth) {
    v.slope = growth->exponent_fitted;
    v.bounded_direction = growth->bounded_direction;
  }
  return v;
}

void write_growth_csv(const GrowthReport& r, std::ostream& os) {
  os << "radius,min_abs_F\n";
  os.precision(17);
  for (std::size_t i = 0; i < r.radii.size(); ++i) os << r.radii[i] << ',' << r.min_values[i] << '\n';
}

}  // namespace nejac
