#include "nejac/noether.hpp"

#include <stdexcept>

namespace nejac {

NoetherBounds noether_bounds(const PolyMap& f, std::size_t mu, std::size_t k) {
  NoetherBounds b;
  const long long deficit = f.bezout_number() - static_cast<long long>(mu);
  b.upper_12 = deficit;
  // With no point at infinity the literal k = 0 formula exceeds (1.2); both are 0 then.
  b.upper_13 = k == 0 ? deficit : deficit - static_cast<long long>(k) + 1;
  if (mu > 0) {
    Poly j = jacobian(f);
    if (!j.is_zero()) b.lower_21 = f.degree_excess() - j.degree();
  }
  return b;
}

NoetherBounds noether_bounds(const PolyMap& f) {
  QuotientAlgebra qa = build_quotient(f);
  return noether_bounds(f, qa.mu(), zeros_at_infinity(f).size());
}

int point_exponent(const DualSpace& d, int cap) {
  const std::size_t n = d.nvars;
  for (int nu = 0; nu <= cap; ++nu) {
    Poly w = Poly::term(Monomial::variable(n, 0, nu), Rational(1));
    if (local_membership(w, d)) return nu;
  }
  throw std::logic_error("local Noether exponent exceeds the proven bound " + std::to_string(cap));
}

NoetherCriteria noether_condition_criteria(const HForm& h0, const PolyMap& f, const InfinityPoint& p) {
  NoetherCriteria c;
  int ord;
  if (p.point.is_rational()) {
    Poly img = chart_image(h0, p.chart);
    if (img.is_zero()) throw std::invalid_argument("H0 vanishes identically");
    ord = img.order();
  } else {
    CPoly img = chart_image_numeric(h0, p.chart);
    if (img.is_zero()) throw std::invalid_argument("H0 vanishes identically");
    ord = img.order();
  }
  const bool vanishes = ord > 0;
  c.a4 = vanishes && meet_transversally_at(f, p);
  c.a5 = ord >= p.local_mult;
  TangentConeData t = tangent_cone_data(f, p);
  int need = 1;
  for (int o : t.orders) need += o - 1;
  c.a6 = t.distinct && ord >= need;
  return c;
}

NoetherReport noether_exponent(const PolyMap& f, const SolveOptions& opts) {
  NoetherReport r;
  auto points = zeros_at_infinity(f, opts);
  QuotientAlgebra qa = build_quotient(f);
  r.mu = qa.mu();
  r.bezout = f.bezout_number();
  r.k = points.size();
  r.bounds = noether_bounds(f, r.mu, r.k);
  const std::size_t n = f.nvars();

  const int cap = static_cast<int>(std::max<long long>(r.bounds.upper_13, 0));
  for (auto& p : points) {
    PointReport pr;
    DualSpace d = local_dual_space(p, static_cast<int>(std::min<long long>(r.bezout, 64)) + 1);
    pr.min_exponent = point_exponent(d, cap);
    pr.transversal = meet_transversally_at(f, p);
    pr.cones = tangent_cone_data(f, p);
    pr.functionals = describe_functionals(d, chart_names(n));
    r.deficit_sum += p.local_mult;
    pr.point = std::move(p);
    r.nu = std::max(r.nu, pr.min_exponent);
    r.points.push_back(std::move(pr));
  }
  r.bezout_deficit_holds = r.deficit_sum == r.bezout - static_cast<long long>(r.mu);

  for (auto& pr : r.points) {
    for (int e = 1; e <= std::max(1, r.nu); ++e) {
      Poly z0 = Poly::term(Monomial::variable(n + 1, 0, e), Rational(1));
      pr.criteria[e] = noether_condition_criteria(HForm{z0, e}, f, pr.point);
    }
  }
  return r;
}

}  // namespace nejac
