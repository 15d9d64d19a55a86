#include "nejac/projective.hpp"

#include "nejac/groebner.hpp"

#include <cstdio>

namespace nejac {

namespace {

std::string format_complex(Complex z) {
  char buf[96];
  if (std::abs(z.imag()) <= 1e-12 * std::max(1.0, std::abs(z.real())))
    std::snprintf(buf, sizeof buf, "%.12g", z.real());
  else
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

std::string to_string_numeric(const CPoly& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::string out;
  std::vector<std::pair<Monomial, Complex>> terms(p.terms().begin(), p.terms().end());
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& a, const auto& b) { return a.first.degree() > b.first.degree(); });
  for (const auto& [m, c] : terms) {
    if (!out.empty()) out += " + ";
    out += "(" + format_complex(c) + ")";
    if (!m.is_one()) out += "*" + to_string(m, names);
  }
  return out;
}

// Restricts the leading forms to the stratum Z_0..Z_{j-1} = 0, Z_j = 1 of P^{n-1}.
std::vector<Poly> stratum_system(const std::vector<Poly>& forms, std::size_t j) {
  const std::size_t n = forms.front().nvars();
  const std::size_t m = n - 1 - j;
  std::vector<Poly> images;
  for (std::size_t k = 0; k < n; ++k) {
    if (k < j)
      images.push_back(Poly(m));
    else if (k == j)
      images.push_back(Poly::constant(m, Rational(1)));
    else
      images.push_back(Poly::variable(m, k - j - 1));
  }
  std::vector<Poly> out;
  for (const auto& f : forms) {
    Poly r = f.compose(std::span<const Poly>(images));
    if (!r.is_zero()) out.push_back(std::move(r));
  }
  return out;
}

ChartMap make_chart(const ProjPoint& p) {
  const std::size_t n1 = p.coords.size();
  std::size_t pivot = 1;
  if (p.exact) {
    Rational best = abs((*p.exact)[1]);
    for (std::size_t k = 2; k < n1; ++k)
      if (abs((*p.exact)[k]) > best) {
        best = abs((*p.exact)[k]);
        pivot = k;
      }
  } else {
    double best = std::abs(p.coords[1]);
    for (std::size_t k = 2; k < n1; ++k)
      if (std::abs(p.coords[k]) > best * (1 + 1e-9)) {
        best = std::abs(p.coords[k]);
        pivot = k;
      }
  }
  ChartMap c;
  c.pivot = pivot;
  c.w_to_z.push_back(0);
  std::vector<Rational> exact_t;
  for (std::size_t k = 1; k < n1; ++k) {
    if (k == pivot) continue;
    c.w_to_z.push_back(k);
    c.translation.push_back(p.coords[k] / p.coords[pivot]);
    if (p.exact) exact_t.push_back((*p.exact)[k] / (*p.exact)[pivot]);
  }
  if (p.exact) {
    c.exact_translation = exact_t;
    for (std::size_t i = 0; i < exact_t.size(); ++i) c.translation[i] = to_complex(exact_t[i]);
  }
  return c;
}

template <class C>
std::vector<BasicPoly<C>> chart_images(const ChartMap& chart, const std::vector<C>& shifts) {
  const std::size_t n = chart.w_to_z.size();
  std::vector<BasicPoly<C>> images(n + 1, BasicPoly<C>(n));
  images[0] = BasicPoly<C>::variable(n, 0);
  images[chart.pivot] = BasicPoly<C>::constant(n, C(1));
  for (std::size_t m = 1; m < n; ++m) {
    BasicPoly<C> w = BasicPoly<C>::variable(n, m);
    w += BasicPoly<C>::constant(n, shifts[m - 1]);
    images[chart.w_to_z[m]] = w;
  }
  return images;
}

}  // namespace

std::string to_string(const ProjPoint& p) {
  std::string s = "(";
  for (std::size_t k = 0; k < p.coords.size(); ++k) {
    if (k) s += ":";
    s += p.exact ? to_string((*p.exact)[k]) : format_complex(p.coords[k]);
  }
  return s + ")";
}

std::vector<std::string> chart_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("W" + std::to_string(i));
  return names;
}

Poly chart_image(const HForm& h, const ChartMap& chart) {
  if (!chart.exact_translation) throw std::invalid_argument("exact chart image requires a rational point");
  auto images = chart_images<Rational>(chart, *chart.exact_translation);
  return h.form.compose(std::span<const Poly>(images));
}

CPoly chart_image_numeric(const HForm& h, const ChartMap& chart) {
  auto images = chart_images<Complex>(chart, chart.translation);
  CPoly r = h.form.cast<Complex>().compose(std::span<const CPoly>(images));
  return pruned(r, 1e-11);
}

std::vector<Poly> chart_system(const PolyMap& f, const ChartMap& chart) {
  std::vector<Poly> out;
  for (const auto& fi : f.components()) out.push_back(chart_image(homogenize(fi), chart));
  return out;
}

std::vector<CPoly> chart_system_numeric(const PolyMap& f, const ChartMap& chart) {
  std::vector<CPoly> out;
  for (const auto& fi : f.components()) out.push_back(chart_image_numeric(homogenize(fi), chart));
  return out;
}

std::vector<Complex> chart_coordinates(const ChartMap& chart, const std::vector<Complex>& z) {
  // z is affine: homogeneous index k >= 1 corresponds to z[k-1].
  const Complex zp = z.at(chart.pivot - 1);
  if (zp == Complex(0.0)) throw std::domain_error("point lies outside the chart");
  std::vector<Complex> w{1.0 / zp};
  for (std::size_t m = 1; m < chart.w_to_z.size(); ++m) w.push_back(z[chart.w_to_z[m] - 1] / zp - chart.translation[m - 1]);
  return w;
}

std::vector<InfinityPoint> zeros_at_infinity(const PolyMap& f, const SolveOptions& opts) {
  const std::size_t n = f.nvars();
  if (!is_zero_dimensional(f)) throw InfiniteZeroSet("the affine zero set is not finite");
  std::vector<Poly> forms;
  for (const auto& fi : f.components()) forms.push_back(fi.leading_form());

  std::vector<ProjPoint> points;
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t m = n - 1 - j;
    std::vector<Poly> sys = stratum_system(forms, j);
    auto base_point = [&]() {
      ProjPoint p;
      p.coords.assign(n + 1, Complex(0.0));
      p.coords[j + 1] = 1.0;
      return p;
    };
    if (m == 0) {
      if (sys.empty()) {
        ProjPoint p = base_point();
        p.exact = std::vector<Rational>(n + 1, Rational(0));
        (*p.exact)[j + 1] = 1;
        points.push_back(std::move(p));
      }
      continue;
    }
    if (sys.empty()) throw InfiniteZeroSet("the leading forms vanish on a positive-dimensional set at infinity");
    auto gb = buchberger(sys, MonomialOrder::degrevlex(m));
    if (gb.is_unit_ideal()) continue;
    if (non_zero_dimensional_witness(gb))
      throw InfiniteZeroSet("the leading forms vanish on a positive-dimensional set at infinity");
    QuotientAlgebra qa(gb);
    ZeroSet zs = solve_zeros_retry(qa, sys, opts);
    for (const auto& z : zs.zeros) {
      ProjPoint p = base_point();
      for (std::size_t k = 0; k < m; ++k) p.coords[j + 2 + k] = z.coordinates[k];
      if (z.exact) {
        p.exact = std::vector<Rational>(n + 1, Rational(0));
        (*p.exact)[j + 1] = 1;
        for (std::size_t k = 0; k < m; ++k) (*p.exact)[j + 2 + k] = (*z.exact)[k];
      }
      points.push_back(std::move(p));
    }
  }

  std::vector<InfinityPoint> out;
  for (auto& p : points) {
    InfinityPoint ip;
    ip.point = std::move(p);
    ip.chart = make_chart(ip.point);
    if (ip.point.is_rational()) {
      ip.local_system = chart_system(f, ip.chart);
      for (const auto& g : ip.local_system) ip.local_system_numeric.push_back(g.cast<Complex>());
    } else {
      ip.local_system_numeric = chart_system_numeric(f, ip.chart);
    }
    ip.local_mult = intersection_number_at(f, ip);
    out.push_back(std::move(ip));
  }
  return out;
}

DualSpace local_dual_space(const InfinityPoint& p, int cap) {
  if (p.point.is_rational()) return dual_space(p.local_system, cap);
  return dual_space(p.local_system_numeric, cap, 1e-8);
}

int intersection_number_at(const PolyMap& f, const InfinityPoint& p) {
  const int cap = static_cast<int>(std::min<long long>(f.bezout_number(), 64)) + 1;
  return static_cast<int>(local_dual_space(p, cap).dimension());
}

bool meet_transversally_at(const PolyMap& f, const InfinityPoint& p) {
  const std::size_t n = f.nvars();
  if (p.point.is_rational()) {
    QMatrix jac(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) jac(i, k) = p.local_system[i].coeff(Monomial::variable(n, k));
    auto det = determinant(jac);
    return det && sgn(*det) != 0;
  }
  Eigen::MatrixXcd jac(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          p.local_system_numeric[i].coeff(Monomial::variable(n, k));
  return numeric_rank(jac, 1e-8) == n;
}

bool coprime(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) throw std::invalid_argument("coprimality of the zero polynomial");
  if (a.is_constant() || b.is_constant()) return true;
  // (a) ∩ (b) = (lcm) by eliminating t from (t a, (1 - t) b).
  const std::size_t n = a.nvars();
  std::vector<std::size_t> rank{n};
  for (std::size_t i = 0; i < n; ++i) rank.push_back(i);
  auto lift = [&](const Poly& p) {
    Poly r(n + 1);
    for (const auto& [m, c] : p.terms()) {
      auto e = m.exponents();
      e.push_back(0);
      r.add_term(Monomial(e), c);
    }
    return r;
  };
  Poly t = Poly::variable(n + 1, n);
  Poly one = Poly::constant(n + 1, Rational(1));
  std::vector<Poly> gens{t * lift(a), (one - t) * lift(b)};
  auto gb = buchberger(gens, MonomialOrder(OrderKind::lex, rank));
  for (const auto& g : gb.generators())
    if (g.degree_in(n) == 0) return g.degree() == a.degree() + b.degree();
  throw std::logic_error("intersection of principal ideals has no generator free of t");
}

bool coprime_forms_numeric(const CPoly& a, const CPoly& b, std::uint64_t seed) {
  if (a.is_zero() || b.is_zero()) throw std::invalid_argument("coprimality of the zero polynomial");
  const int p = a.degree(), q = b.degree();
  if (p == 0 || q == 0) return true;
  const std::size_t n = a.nvars();
  SeededInts rng(seed + 101);
  std::vector<CPoly> images;
  for (std::size_t i = 0; i < n; ++i) {
    Complex u(rng.next_unit() - 0.5, rng.next_unit() - 0.5), v(rng.next_unit() - 0.5, rng.next_unit() - 0.5);
    CPoly img = CPoly::variable(2, 0) * u;
    img += CPoly::variable(2, 1) * v;
    images.push_back(img);
  }
  CPoly ra = a.compose(std::span<const CPoly>(images)), rb = b.compose(std::span<const CPoly>(images));
  // Binary forms: coefficient of s^k t^(deg-k).
  auto coeffs = [](const CPoly& r, int deg) {
    std::vector<Complex> c(deg + 1, 0.0);
    for (const auto& [m, v] : r.terms()) c[m[0]] += v;
    return c;
  };
  auto ca = coeffs(ra, p), cb = coeffs(rb, q);
  const int size = p + q;
  Eigen::MatrixXcd syl = Eigen::MatrixXcd::Zero(size, size);
  for (int r = 0; r < q; ++r)
    for (int k = 0; k <= p; ++k) syl(r, r + k) = ca[k];
  for (int r = 0; r < p; ++r)
    for (int k = 0; k <= q; ++k) syl(q + r, r + k) = cb[k];
  return numeric_rank(syl, 1e-8) == static_cast<std::size_t>(size);
}

TangentConeData tangent_cone_data(const PolyMap& f, const InfinityPoint& p) {
  TangentConeData t;
  const std::size_t n = f.nvars();
  auto names = chart_names(n);
  t.condition_ii = true;
  t.distinct = true;
  if (p.point.is_rational()) {
    std::vector<Poly> cones;
    for (const auto& g : p.local_system) {
      t.orders.push_back(g.order());
      cones.push_back(g.lowest_form());
      t.cones.push_back(to_string(cones.back(), names));
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = i + 1; k < n; ++k) t.distinct = t.distinct && coprime(cones[i], cones[k]);
  } else {
    std::vector<CPoly> cones;
    for (const auto& g : p.local_system_numeric) {
      t.orders.push_back(g.order());
      cones.push_back(g.lowest_form());
      t.cones.push_back(to_string_numeric(cones.back(), names));
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = i + 1; k < n; ++k) t.distinct = t.distinct && coprime_forms_numeric(cones[i], cones[k]);
  }
  for (std::size_t i = 0; i < n; ++i) t.condition_ii = t.condition_ii && t.orders[i] != f.degrees()[i];
  return t;
}

bool has_finite_zeros(const PolyMap& f) {
  try {
    (void)zeros_at_infinity(f);
    return true;
  } catch (const InfiniteZeroSet&) {
    return false;
  }
}

}  // namespace nejac
