#include "nejac/report.hpp"

#include <regex>
#include <sstream>

namespace nejac {

namespace {

// Generated monomial names use Z1..Zn; map them onto the declared names.
std::string rename(const std::string& s, const ReportContext& ctx) {
  static const std::regex var("Z([0-9]+)");
  std::string out;
  auto it = std::sregex_iterator(s.begin(), s.end(), var);
  std::size_t last = 0;
  for (; it != std::sregex_iterator(); ++it) {
    std::size_t k = std::stoul((*it)[1].str());
    out += s.substr(last, it->position() - last);
    out += k >= 1 && k <= ctx.names.size() ? ctx.names[k - 1] : it->str();
    last = it->position() + it->length();
  }
  return out + s.substr(last);
}

json complex_list(const std::vector<Complex>& v) {
  json a = json::array();
  for (const auto& c : v) a.push_back(to_json(c));
  return a;
}

json rational_list(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(to_json(q));
  return a;
}

json optional_rational(const std::optional<Rational>& q) { return q ? to_json(*q) : json(nullptr); }

Poly random_member(const PolyMap& f, SeededInts& rng) {
  const std::size_t n = f.nvars();
  Poly p(n);
  for (std::size_t i = 0; i < n; ++i) {
    Poly r = Poly::constant(n, Rational(rng.next(-3, 3)));
    for (std::size_t v = 0; v < n; ++v) r += Poly::variable(n, v) * Rational(rng.next(-3, 3));
    p += r * f[i];
  }
  return p;
}

void render(const json& j, int indent, std::ostringstream& os) {
  const std::string pad(indent, ' ');
  auto scalar = [](const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  };
  auto is_flat = [](const json& v) {
    if (!v.is_array()) return !v.is_object();
    for (const auto& e : v)
      if (e.is_object() || (e.is_array() && !(e.size() == 2 && e[0].is_number()))) return false;
    return true;
  };
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = j.is_object() ? it.key() : "-";
    const json& v = it.value();
    if (is_flat(v)) {
      if (v.is_array()) {
        std::string line;
        for (const auto& e : v) line += (line.empty() ? "" : ", ") + scalar(e);
        os << pad << key << ": [" << line << "]\n";
      } else {
        os << pad << key << ": " << scalar(v) << "\n";
      }
    } else {
      os << pad << key << ":\n";
      render(v, indent + 2, os);
    }
  }
}

}  // namespace

json to_json(const Rational& q) { return to_string(q); }
json to_json(const Complex& c) { return json::array({c.real(), c.imag()}); }

std::string display(const Poly& p, const ReportContext& ctx) {
  return ctx.names.size() == p.nvars() ? to_string(p, ctx.names) : to_string(p);
}

json to_json(const ZeroSet& zs) {
  json zeros = json::array();
  std::size_t total = 0;
  for (const auto& z : zs.zeros) {
    json e;
    e["coordinates"] = complex_list(z.coordinates);
    e["exact"] = z.exact ? rational_list(*z.exact) : json(nullptr);
    e["multiplicity"] = z.multiplicity;
    total += z.multiplicity;
    zeros.push_back(e);
  }
  json r;
  r["mu"] = total;
  r["distinct"] = zs.zeros.size();
  r["zeros"] = zeros;
  r["separating_form"] = rational_list(zs.combination);
  r["solver_seed"] = zs.seed;
  return r;
}

json infinity_json(const PolyMap& f, const std::vector<InfinityPoint>& pts, std::size_t mu) {
  json points = json::array();
  long long sum = 0;
  auto w = chart_names(f.nvars());
  for (const auto& p : pts) {
    json e;
    e["point"] = to_string(p.point);
    e["rational"] = p.point.is_rational();
    e["intersection_number"] = p.local_mult;
    e["transversal"] = meet_transversally_at(f, p);
    e["chart_pivot"] = p.chart.pivot;
    json local = json::array();
    if (p.point.is_rational())
      for (const auto& g : p.local_system) local.push_back(to_string(g, w));
    e["local_system"] = local;
    sum += p.local_mult;
    points.push_back(e);
  }
  json r;
  r["points"] = points;
  r["k"] = pts.size();
  r["bezout"] = f.bezout_number();
  r["mu"] = mu;
  r["deficit_sum"] = sum;
  r["bezout_deficit_holds"] = sum == f.bezout_number() - static_cast<long long>(mu);
  return r;
}

json to_json(const NoetherReport& r) {
  json out;
  out["nu"] = r.nu;
  json b;
  b["upper_12"] = r.bounds.upper_12;
  b["upper_13"] = r.bounds.upper_13;
  b["lower_21"] = r.bounds.lower_21 ? json(*r.bounds.lower_21) : json(nullptr);
  out["bounds"] = b;
  json pts = json::array();
  for (const auto& p : r.points) {
    json e;
    e["point"] = to_string(p.point.point);
    e["min_exponent"] = p.min_exponent;
    e["transversal"] = p.transversal;
    e["intersection_number"] = p.point.local_mult;
    json cones;
    cones["orders"] = p.cones.orders;
    cones["cones"] = p.cones.cones;
    cones["distinct"] = p.cones.distinct;
    cones["condition_ii"] = p.cones.condition_ii;
    e["tangent_cones"] = cones;
    e["functionals"] = p.functionals;
    json crit;
    for (const auto& [k, c] : p.criteria) crit[std::to_string(k)] = {{"a4", c.a4}, {"a5", c.a5}, {"a6", c.a6}};
    e["criteria"] = crit;
    pts.push_back(e);
  }
  out["points"] = pts;
  out["mu"] = r.mu;
  out["bezout"] = r.bezout;
  out["k"] = r.k;
  out["deficit_sum"] = r.deficit_sum;
  out["bezout_deficit_holds"] = r.bezout_deficit_holds;
  return out;
}

json to_json(const ResidueReport& r, const ReportContext& ctx) {
  json out;
  out["g"] = display(r.g, ctx);
  out["global_sum_exact"] = optional_rational(r.global_sum_exact);
  out["global_sum_numeric"] = r.global_sum_numeric ? to_json(*r.global_sum_numeric) : json(nullptr);
  json methods = json::array();
  for (const auto& m : r.methods) {
    json e;
    e["method"] = m.method;
    e["exact"] = optional_rational(m.exact);
    e["value"] = to_json(m.value);
    e["error_estimate"] = m.error_estimate;
    methods.push_back(e);
  }
  out["methods"] = methods;
  out["agree"] = r.agree;
  if (!r.agree) out["disagreement"] = r.disagreement;
  json zeros = json::array();
  for (const auto& z : r.per_zero) {
    json e;
    e["zero"] = complex_list(z.zero.coordinates);
    e["multiplicity"] = z.zero.multiplicity;
    e["residue"] = to_json(z.value);
    e["exact"] = optional_rational(z.exact);
    e["method"] = z.method;
    zeros.push_back(e);
  }
  out["per_zero"] = zeros;
  out["perturbation_direction"] = rational_list(r.perturbation_direction);
  return out;
}

json to_json(const JacobiReport& r, const ReportContext& ctx) {
  json out;
  out["nu"] = r.nu;
  out["threshold"] = r.threshold;
  json checked = json::array();
  for (const auto& s : r.checked) checked.push_back(rename(s, ctx));
  out["checked"] = checked;
  out["all_zero"] = r.all_zero;
  json violations = json::array();
  for (const auto& s : r.violations) violations.push_back(rename(s, ctx));
  out["violations"] = violations;
  json w = json::object();
  for (const auto& [m, v] : r.witnesses) w[rename(m, ctx)] = to_json(v);
  out["witnesses"] = w;
  out["extra"] = r.extra;
  out["methods_agree"] = r.methods_agree;
  return out;
}

json to_json(const DivisionCertificate& c, const ReportContext& ctx) {
  json out;
  out["p"] = display(c.p, ctx);
  json cof = json::array();
  for (const auto& a : c.cofactors) cof.push_back(display(a, ctx));
  out["cofactors"] = cof;
  json audit = json::array();
  for (std::size_t i = 0; i < c.audit.size(); ++i) {
    json e;
    e["index"] = i + 1;
    e["degree"] = c.audit[i].degree ? json(*c.audit[i].degree) : json(nullptr);
    e["bound"] = c.audit[i].bound;
    e["within"] = c.audit[i].within;
    audit.push_back(e);
  }
  out["audit"] = audit;
  out["nu"] = c.nu;
  out["bound_used"] = c.bound_used;
  out["verified"] = c.verified;
  return out;
}

json to_json(const GrowthReport& r) {
  json out;
  out["label"] = r.label;
  out["exponent_claimed"] = r.exponent_claimed;
  out["exponent_deficit"] = r.exponent_deficit;
  out["exponent_fitted"] = r.exponent_fitted;
  out["fitted_stderr"] = r.fitted_stderr;
  out["band"] = {r.band_low, r.band_high};
  out["constant_c"] = r.constant_c;
  out["radius_r"] = r.radius_r;
  out["leading_min"] = r.leading_min ? json(*r.leading_min) : json(nullptr);
  out["onset_radius"] = r.onset_radius ? json(*r.onset_radius) : json(nullptr);
  out["radii"] = r.radii;
  out["min_values"] = r.min_values;
  json arg = json::array();
  for (const auto& z : r.argmins) arg.push_back(complex_list(z));
  out["argmins"] = arg;
  out["bounded_direction"] = r.bounded_direction ? complex_list(*r.bounded_direction) : json(nullptr);
  out["consistent"] = r.consistent;
  out["consistent_deficit"] = r.consistent_deficit;
  out["seed"] = r.seed;
  return out;
}

json to_json(const ProperVerdict& v) {
  json out;
  out["verdict"] = v.verdict;
  out["certified"] = v.certified;
  out["slope"] = v.slope ? json(*v.slope) : json(nullptr);
  out["bounded_direction"] = v.bounded_direction ? complex_list(*v.bounded_direction) : json(nullptr);
  return out;
}

FullReport report_all(const PolyMap& f, const ReportContext& ctx) {
  FullReport rep;
  SolveOptions so{ctx.tol, ctx.seed};
  ResidueOptions ro;
  ro.seed = ctx.seed;
  ro.tol = ctx.tol;

  auto qa = build_quotient(f);
  const std::size_t mu = qa.mu();
  auto zs = solve_zeros_retry(qa, f.components(), so);
  auto pts = zeros_at_infinity(f, so);
  auto noether = noether_exponent(f, so);
  auto jac = jacobi_verify(f, noether.nu, ctx.jacobi_extra, ro);

  ResidueEngine engine(f, ro);
  auto res_one = engine.report(Poly::constant(f.nvars(), Rational(1)));
  auto res_jac = engine.report(jacobian(f));

  Divider divider(f);
  SeededInts rng(ctx.seed * 7919 + 101);
  std::vector<Poly> ps;
  for (int k = 0; k < ctx.division_samples; ++k) ps.push_back(random_member(f, rng));
  json division;
  bool division_ok = true;
  for (const auto& [label, nu] : {std::pair<std::string, long long>{"nu", noether.nu},
                                  std::pair<std::string, long long>{"upper_12", noether.bounds.upper_12}}) {
    json block;
    block["nu_used"] = nu;
    int verified = 0, violations = 0;
    try {
      for (const auto& c : divider.divide_all(ps, static_cast<int>(nu))) verified += c.verified;
    } catch (const DivisionError& e) {
      ++violations;
      block["error"] = e.what();
    }
    block["samples"] = ps.size();
    block["verified"] = verified;
    block["bound_violations"] = violations;
    division_ok = division_ok && violations == 0 && verified == static_cast<int>(ps.size());
    division[label] = block;
  }
  if (!ps.empty()) division["example"] = to_json(divider.divide(ps.front(), noether.nu), ctx);

  GrowthOptions go;
  go.seed = ctx.seed;
  auto growth = growth_scan(f, noether.nu, static_cast<long long>(mu), go);
  auto verdict = properness_verdict(f, noether, &growth);

  bool all_transversal = !noether.points.empty();
  for (const auto& p : noether.points) all_transversal = all_transversal && p.transversal;
  json inv;
  inv["bezout_deficit"] = noether.bezout_deficit_holds;
  inv["sandwich"] = (!noether.bounds.lower_21 || *noether.bounds.lower_21 <= noether.nu) &&
                    noether.nu <= noether.bounds.upper_13 && noether.bounds.upper_13 <= noether.bounds.upper_12;
  inv["transversality_clause"] = !all_transversal || noether.nu == 1;
  inv["euler_jacobi"] = jac.all_zero;
  inv["trace_identity"] = res_jac.global_sum_exact && *res_jac.global_sum_exact == Rational(static_cast<long>(mu));
  inv["method_agreement"] = res_one.agree && res_jac.agree && jac.methods_agree;
  inv["division_certified"] = division_ok;
  inv["growth_consistent"] = growth.consistent && growth.consistent_deficit;
  for (const auto& [k, v] : inv.items()) rep.invariants_hold = rep.invariants_hold && v.get<bool>();
  inv["all_hold"] = rep.invariants_hold;

  json& b = rep.body;
  b["mu"] = mu;
  b["solve"] = to_json(zs);
  b["infinity"] = infinity_json(f, pts, mu);
  b["noether"] = to_json(noether);
  b["jacobi"] = to_json(jac, ctx);
  b["residues"] = {{"1", to_json(res_one, ctx)}, {"jacobian", to_json(res_jac, ctx)}};
  b["division"] = division;
  b["growth"] = to_json(growth);
  b["properness"] = to_json(verdict);
  b["invariants"] = inv;
  return rep;
}

json envelope(const std::string& command, const SystemFile& sys, const ReportContext& ctx, json result) {
  json out;
  out["tool"] = "nejac";
  out["version"] = kToolVersion;
  out["command"] = command;
  json input;
  input["name"] = sys.name;
  input["variables"] = sys.variables;
  input["polynomials"] = sys.polynomials;
  out["input"] = input;
  out["seed"] = ctx.seed;
  out["tol"] = ctx.tol;
  out["result"] = std::move(result);
  return out;
}

std::string render_text(const json& j) {
  std::ostringstream os;
  render(j, 0, os);
  return os.str();
}

}  // namespace nejac
