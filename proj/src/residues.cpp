#include "nejac/residues.hpp"

#include "nejac/noether.hpp"

#include <algorithm>
#include <sstream>

namespace nejac {

namespace {

Poly monomial_poly(const Monomial& m) { return Poly::term(m, Rational(1)); }

// s with s * a = gcd(a, b) (mod b), gcd normalized to 1; requires coprime inputs.
UPoly inverse_mod(const UPoly& a, const UPoly& b) {
  UPoly r0 = a, r1 = b;
  UPoly s0(std::vector<Rational>{Rational(1)}), s1;
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = r1;
    r1 = r;
    UPoly next = s0 - q * s1;
    s0 = s1;
    s1 = next;
  }
  if (r0.degree() != 0) throw std::logic_error("idempotent construction: factors are not coprime");
  return s0 * UPoly(std::vector<Rational>{Rational(1) / r0.lead()});
}

QMatrix eval_matrix_poly(const UPoly& p, const QMatrix& m) {
  const std::size_t n = m.rows();
  QMatrix acc(n, n);
  const auto& c = p.coeffs();
  for (std::size_t k = c.size(); k-- > 0;) {
    acc = acc * m;
    for (std::size_t i = 0; i < n; ++i) acc(i, i) += c[k];
  }
  return acc;
}

// Value at 0 of the interpolating polynomial through (t_k, y_k).
Complex neville_at_zero(const std::vector<double>& t, std::vector<Complex> y) {
  const std::size_t n = t.size();
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = 0; i + level < n; ++i)
      y[i] = (t[i + level] * y[i] - t[i] * y[i + 1]) / (t[i + level] - t[i]);
  return y[0];
}

bool close(Complex numeric, const Rational& exact, double tol) {
  const double e = exact.get_d();
  return std::abs(numeric - Complex(e, 0.0)) <= tol * std::max(1.0, std::abs(e));
}

}  // namespace

ResidueValue residue_at_simple_zero(const PolyMap& f, const AffineZero& z, const Poly& g) {
  Poly j = jacobian(f);
  if (z.multiplicity != 1) throw ResidueError("zero is not simple");
  if (z.exact) {
    Rational jz = eval_exact(j, *z.exact);
    if (sgn(jz) == 0) throw ResidueError("zero is not simple");
    Rational r = eval_exact(g, *z.exact) / jz;
    return {to_complex(r), r};
  }
  Complex jz = eval(j, z.coordinates);
  if (std::abs(jz) < 1e-12) throw ResidueError("zero is not simple");
  return {eval(g, z.coordinates) / jz, std::nullopt};
}

ResidueEngine::ResidueEngine(PolyMap f, ResidueOptions opts)
    : f_(std::move(f)), opts_(std::move(opts)), qa_(build_quotient(f_)), jac_(jacobian(f_)) {
  if (qa_.mu() > 0) jac_mat_ = qa_.mult_matrix(jac_);
}

const ZeroSet& ResidueEngine::zeros() {
  if (!zeros_) zeros_ = solve_zeros_retry(qa_, f_.components(), {opts_.tol, opts_.seed});
  return *zeros_;
}

bool ResidueEngine::all_simple() {
  const auto& zs = zeros().zeros;
  return std::all_of(zs.begin(), zs.end(), [](const AffineZero& z) { return z.multiplicity == 1; });
}

void ResidueEngine::prepare_bezoutian() {
  if (tau_) return;
  const std::size_t n = f_.nvars(), mu = qa_.mu();
  if (mu == 0) {
    tau_ = std::vector<Rational>{};
    return;
  }
  // Variables 0..n-1 are Z, n..2n-1 are Y.
  const std::size_t m = 2 * n;
  std::vector<std::vector<Poly>> delta(n, std::vector<Poly>(n, Poly(m)));
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [mono, c] : f_[i].terms()) {
      for (std::size_t j = 0; j < n; ++j) {
        const int e = mono[j];
        if (e == 0) continue;
        std::vector<int> rest(m, 0);
        for (std::size_t k = 0; k < n; ++k) {
          if (k < j) rest[n + k] = mono[k];
          if (k > j) rest[k] = mono[k];
        }
        for (int a = 0; a < e; ++a) {
          std::vector<int> ex = rest;
          ex[j] += a;
          ex[n + j] += e - 1 - a;
          delta[i][j].add_term(Monomial(ex), c);
        }
      }
    }
  }
  Poly bez = determinant(delta, m);

  std::map<Monomial, std::vector<Rational>> cache;
  auto coords_of = [&](const Monomial& mono) -> const std::vector<Rational>& {
    auto it = cache.find(mono);
    if (it == cache.end()) it = cache.emplace(mono, qa_.coords(monomial_poly(mono))).first;
    return it->second;
  };
  QMatrix theta(mu, mu);
  for (const auto& [mono, c] : bez.terms()) {
    std::vector<int> ez(mono.exponents().begin(), mono.exponents().begin() + static_cast<long>(n));
    std::vector<int> ey(mono.exponents().begin() + static_cast<long>(n), mono.exponents().end());
    const auto& a = coords_of(Monomial(ez));
    const auto& b = coords_of(Monomial(ey));
    for (std::size_t r = 0; r < mu; ++r) {
      if (sgn(a[r]) == 0) continue;
      for (std::size_t s = 0; s < mu; ++s)
        if (sgn(b[s]) != 0) theta(r, s) += c * a[r] * b[s];
    }
  }
  ExactLU lu(theta);
  if (!lu.invertible()) throw std::logic_error("Bezoutian matrix is singular for a zero-dimensional complete intersection");
  std::vector<Rational> e0(mu, Rational(0));
  e0[0] = 1;  // basis[0] = 1
  tau_ = lu.solve(e0);
}

Rational ResidueEngine::bezoutian(const Poly& g) {
  prepare_bezoutian();
  if (qa_.mu() == 0) return 0;
  auto c = qa_.coords(g);
  Rational acc = 0;
  for (std::size_t k = 0; k < c.size(); ++k)
    if (sgn(c[k]) != 0) acc += c[k] * (*tau_)[k];
  return acc;
}

std::optional<Rational> ResidueEngine::trace_formula(const Poly& g) {
  if (qa_.mu() == 0) return Rational(0);
  if (!jac_lu_) jac_lu_.emplace(jac_mat_);
  if (!jac_lu_->invertible()) return std::nullopt;
  auto h = jac_lu_->solve(qa_.coords(g));
  const auto& tv = qa_.trace_vector();
  Rational acc = 0;
  for (std::size_t k = 0; k < h.size(); ++k) acc += h[k] * tv[k];
  return acc;
}

std::optional<Rational> ResidueEngine::jacobian_identity(const Poly& g) {
  if (qa_.mu() == 0) return std::nullopt;
  if (!jac_lu_) jac_lu_.emplace(jac_mat_);
  if (jac_lu_->invertible()) return std::nullopt;
  auto h = solve_any(jac_mat_, qa_.coords(g));
  if (!h) return std::nullopt;
  const auto& tv = qa_.trace_vector();
  Rational acc = 0;
  for (std::size_t k = 0; k < h->size(); ++k) acc += (*h)[k] * tv[k];
  return acc;
}

void ResidueEngine::prepare_transformation() {
  if (transform_state_ != 0) return;
  transform_state_ = -1;
  const std::size_t n = f_.nvars();
  if (qa_.mu() == 0) return;
  std::vector<Eliminant> elims;
  int total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    elims.push_back(eliminant(qa_, i));
    total += elims.back().poly.degree();
  }
  if (total > 12 || n > 3) return;
  auto tb = buchberger_tracked(f_.components(), MonomialOrder::degrevlex(n));
  std::vector<std::vector<Poly>> a;
  for (const auto& e : elims) {
    auto cof = membership_with_cofactors(e.as_poly, tb);
    if (!cof) throw std::logic_error("eliminant is not in the ideal");
    a.push_back(*cof);
  }
  transform_det_ = determinant(a, n);
  transform_polys_.clear();
  for (const auto& e : elims) transform_polys_.push_back(e.poly);
  transform_tables_.assign(n, {});
  transform_rems_.assign(n, {});
  transform_state_ = 1;
}

// Coefficient of x^(k-1) in x^e mod P_i, i.e. the univariate total residue of x^e / P_i.
const Rational& ResidueEngine::transform_coeff(std::size_t i, int e) {
  const UPoly& p = transform_polys_[i];
  const std::size_t k = static_cast<std::size_t>(p.degree());
  auto& table = transform_tables_[i];
  auto& rem = transform_rems_[i];
  if (table.empty() && k > 0) {
    rem.assign(k, Rational(0));
    rem[0] = 1;
  }
  while (static_cast<int>(table.size()) <= e) {
    if (k == 0) {
      table.push_back(0);
      continue;
    }
    table.push_back(rem[k - 1]);
    // rem <- x * rem mod p, p monic.
    Rational top = rem[k - 1];
    for (std::size_t d = k - 1; d > 0; --d) rem[d] = rem[d - 1] - top * p.coeffs()[d];
    rem[0] = -top * p.coeffs()[0];
  }
  return table[static_cast<std::size_t>(e)];
}

std::optional<Rational> ResidueEngine::transformation_law(const Poly& g) {
  prepare_transformation();
  if (transform_state_ != 1) return std::nullopt;
  const std::size_t n = f_.nvars();
  Poly h = g * transform_det_;
  Rational acc = 0;
  for (const auto& [m, c] : h.terms()) {
    Rational term = c;
    for (std::size_t i = 0; i < n && sgn(term) != 0; ++i) term *= transform_coeff(i, m[i]);
    acc += term;
  }
  return acc;
}

std::optional<Complex> ResidueEngine::simple_zero_sum(const Poly& g) {
  if (!all_simple()) return std::nullopt;
  Complex acc = 0;
  for (const auto& z : zeros().zeros) acc += residue_at_simple_zero(f_, z, g).value;
  return acc;
}

void ResidueEngine::prepare_perturbation() {
  if (perturb_ready_) return;
  perturb_ready_ = true;
  const std::size_t n = f_.nvars();
  SeededInts rng(opts_.seed * 7919 + 17);
  direction_.clear();
  for (std::size_t i = 0; i < n; ++i) direction_.push_back(Rational(rng.next_nonzero(5)));
  const auto& base = zeros().zeros;
  for (const auto& t : opts_.schedule) {
    std::vector<Poly> comps;
    for (std::size_t i = 0; i < n; ++i) comps.push_back(f_[i] - Poly::constant(n, t * direction_[i]));
    try {
      QuotientAlgebra qt = build_quotient(comps);
      ZeroSet zt = solve_zeros_retry(qt, comps, {opts_.tol, opts_.seed});
      bool simple = std::all_of(zt.zeros.begin(), zt.zeros.end(), [](const AffineZero& z) { return z.multiplicity == 1; });
      if (!simple) continue;
      // Greedy nearest assignment of perturbed zeros to unperturbed clusters.
      std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
      for (std::size_t k = 0; k < base.size(); ++k)
        for (std::size_t p = 0; p < zt.zeros.size(); ++p) {
          double d = 0;
          for (std::size_t v = 0; v < n; ++v) d = std::max(d, std::abs(base[k].coordinates[v] - zt.zeros[p].coordinates[v]));
          pairs.emplace_back(d, k, p);
        }
      std::sort(pairs.begin(), pairs.end());
      std::vector<std::vector<std::size_t>> clusters(base.size());
      std::vector<bool> used(zt.zeros.size(), false);
      for (const auto& [d, k, p] : pairs) {
        if (used[p] || clusters[k].size() >= static_cast<std::size_t>(base[k].multiplicity)) continue;
        clusters[k].push_back(p);
        used[p] = true;
      }
      bool complete = true;
      for (std::size_t k = 0; k < base.size(); ++k)
        complete = complete && clusters[k].size() == static_cast<std::size_t>(base[k].multiplicity);
      if (!complete) continue;
      perturbed_.push_back({t, std::move(clusters), std::move(zt)});
    } catch (const RerandomizeError&) {
      continue;
    }
  }
}

std::optional<PerturbationResult> ResidueEngine::perturbation(const Poly& g) {
  prepare_perturbation();
  if (perturbed_.size() < 2) return std::nullopt;
  const std::size_t nclusters = zeros().zeros.size();
  std::vector<double> ts;
  std::vector<Complex> totals;
  std::vector<std::vector<Complex>> per_cluster(nclusters);
  for (const auto& pt : perturbed_) {
    ts.push_back(pt.t.get_d());
    Complex total = 0;
    for (std::size_t k = 0; k < nclusters; ++k) {
      Complex s = 0;
      for (std::size_t p : pt.clusters[k]) {
        const auto& z = pt.zeros.zeros[p].coordinates;
        s += eval(g, z) / eval(jac_, z);
      }
      per_cluster[k].push_back(s);
      total += s;
    }
    totals.push_back(total);
  }
  PerturbationResult r;
  r.direction = direction_;
  r.schedule_used = ts;
  r.value = neville_at_zero(ts, totals);
  // Compare with the extrapolation that drops the largest t.
  std::vector<double> ts2(ts.begin() + 1, ts.end());
  std::vector<Complex> y2(totals.begin() + 1, totals.end());
  Complex lower = ts2.size() >= 2 ? neville_at_zero(ts2, y2) : y2.front();
  r.error_estimate = std::abs(r.value - lower);
  for (std::size_t k = 0; k < nclusters; ++k) r.cluster_values.push_back(neville_at_zero(ts, per_cluster[k]));
  return r;
}

std::optional<Rational> ResidueEngine::cluster_residue_exact(std::size_t zero_index, const Poly& g) {
  const auto& zs = zeros();
  const AffineZero& z = zs.zeros.at(zero_index);
  if (!z.exact) return std::nullopt;
  auto it = idempotents_.find(zero_index);
  if (it == idempotents_.end()) {
    const std::size_t mu = qa_.mu();
    QMatrix mu_mat(mu, mu);
    Rational lambda = 0;
    for (std::size_t v = 0; v < f_.nvars(); ++v) {
      mu_mat = mu_mat + zs.combination[v] * qa_.mult_matrix(v);
      lambda += zs.combination[v] * (*z.exact)[v];
    }
    UPoly chi(characteristic_polynomial(mu_mat));
    UPoly lin(std::vector<Rational>{-lambda, Rational(1)});
    UPoly base(std::vector<Rational>{Rational(1)});
    for (int k = 0; k < z.multiplicity; ++k) base = base * lin;
    auto [q, rem] = divmod(chi, base);
    if (!rem.is_zero()) throw std::logic_error("cluster multiplicity disagrees with the characteristic polynomial");
    UPoly s = inverse_mod(q, base);
    UPoly e = divmod(s * q, chi).second;
    it = idempotents_.emplace(zero_index, eval_matrix_poly(e, mu_mat)).first;
  }
  prepare_bezoutian();
  auto c = it->second.apply(qa_.coords(g));
  Rational acc = 0;
  for (std::size_t k = 0; k < c.size(); ++k) acc += c[k] * (*tau_)[k];
  return acc;
}

ResidueReport ResidueEngine::report(const Poly& g) {
  ResidueReport r;
  r.g = g;
  const double tol = opts_.tol;
  const auto& zs = zeros();
  r.combination = zs.combination;

  Rational bez = bezoutian(g);
  r.methods.push_back({"bezoutian", bez, to_complex(bez), 0.0});
  if (auto v = trace_formula(g)) r.methods.push_back({"trace", *v, to_complex(*v), 0.0});
  if (auto v = jacobian_identity(g)) r.methods.push_back({"jacobian_identity", *v, to_complex(*v), 0.0});
  if (auto v = transformation_law(g)) r.methods.push_back({"transformation_law", *v, to_complex(*v), 0.0});

  // Per-zero residues; simple zeros directly, clusters through idempotents or perturbation.
  std::optional<PerturbationResult> pert;
  if (opts_.perturbation) pert = perturbation(g);
  bool per_zero_exact = true;
  Complex per_zero_sum = 0;
  Rational per_zero_exact_sum = 0;
  for (std::size_t k = 0; k < zs.zeros.size(); ++k) {
    const auto& z = zs.zeros[k];
    ZeroResidue zr;
    zr.zero = z;
    zr.cluster = z.multiplicity > 1;
    if (!zr.cluster) {
      auto v = residue_at_simple_zero(f_, z, g);
      zr.value = v.value;
      zr.exact = v.exact;
      zr.method = "simple_zero";
    } else if (auto v = cluster_residue_exact(k, g)) {
      zr.value = to_complex(*v);
      zr.exact = *v;
      zr.method = "idempotent";
    } else if (pert) {
      zr.value = pert->cluster_values[k];
      zr.method = "perturbation";
    } else {
      zr.method = "unavailable";
      per_zero_exact = false;
      r.per_zero.push_back(zr);
      continue;
    }
    if (zr.exact)
      per_zero_exact_sum += *zr.exact;
    else
      per_zero_exact = false;
    per_zero_sum += zr.value;
    r.per_zero.push_back(std::move(zr));
  }

  if (all_simple()) {
    MethodResult m{"simple_zero_sum", std::nullopt, per_zero_sum, 0.0};
    if (per_zero_exact) m.exact = per_zero_exact_sum;
    r.methods.push_back(m);
  } else if (per_zero_exact) {
    r.methods.push_back({"cluster_sum", per_zero_exact_sum, to_complex(per_zero_exact_sum), 0.0});
  }
  if (pert) {
    r.methods.push_back({"perturbation", std::nullopt, pert->value, pert->error_estimate});
    r.perturbation_direction = pert->direction;
  }

  std::optional<Rational> trace;
  for (const auto& m : r.methods)
    if (m.method == "trace") trace = m.exact;
  r.global_sum_exact = trace ? *trace : bez;
  for (const auto& m : r.methods) {
    bool ok = m.exact ? *m.exact == *r.global_sum_exact : close(m.value, *r.global_sum_exact, tol);
    if (!ok) {
      r.agree = false;
      std::ostringstream os;
      os << m.method << " gives " << (m.exact ? to_string(*m.exact) : std::to_string(m.value.real())) << " but "
         << to_string(*r.global_sum_exact) << " was expected; ";
      r.disagreement += os.str();
    }
  }
  if (pert)
    r.global_sum_numeric = pert->value;
  else if (all_simple())
    r.global_sum_numeric = per_zero_sum;
  return r;
}

ResidueReport global_residue(const PolyMap& f, const Poly& g, const ResidueOptions& opts) {
  ResidueEngine engine(f, opts);
  ResidueReport r = engine.report(g);
  if (!r.agree) throw ResidueError("residue methods disagree: " + r.disagreement);
  return r;
}

JacobiReport jacobi_verify(const PolyMap& f, int nu, int max_extra_degree, const ResidueOptions& opts) {
  JacobiReport r;
  r.nu = nu;
  r.extra = max_extra_degree;
  r.threshold = f.degree_excess() - nu;
  ResidueEngine engine(f, opts);
  const std::size_t n = f.nvars();
  auto residue = [&](const Monomial& m) {
    Poly g = monomial_poly(m);
    Rational v = engine.bezoutian(g);
    if (auto t = engine.trace_formula(g); t && *t != v) r.methods_agree = false;
    if (auto t = engine.jacobian_identity(g); t && *t != v) r.methods_agree = false;
    return v;
  };
  for (int d = 0; d < r.threshold; ++d)
    for (const auto& m : monomials_of_degree(n, d)) {
      std::string name = to_string(monomial_poly(m));
      r.checked.push_back(name);
      if (sgn(residue(m)) != 0) {
        r.all_zero = false;
        r.violations.push_back(name);
      }
    }
  const int lo = std::max(r.threshold, 0);
  for (int d = lo; d < lo + max_extra_degree; ++d)
    for (const auto& m : monomials_of_degree(n, d)) {
      Rational v = residue(m);
      std::string name = to_string(monomial_poly(m));
      r.witness_rows.emplace_back(name, v);
      if (sgn(v) != 0) r.witnesses.emplace_back(name, v);
    }
  return r;
}

JacobiReport jacobi_verify(const PolyMap& f, int max_extra_degree, const ResidueOptions& opts) {
  return jacobi_verify(f, noether_exponent(f, {opts.tol, opts.seed}).nu, max_extra_degree, opts);
}

}  // namespace nejac
