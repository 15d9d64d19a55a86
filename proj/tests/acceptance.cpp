// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include "nejac/report.hpp"
#include "test_support.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace nejac;
using namespace nejac::testing;

namespace {

struct Entry {
  std::string name;
  PolyMap f;
  NoetherReport noether;
};

Poly random_form(SeededInts& rng, std::size_t n, int degree) {
  Poly p;
  do p = random_poly(rng, n, degree).homogeneous_part(degree);
  while (p.is_zero());
  return p;
}

bool usable(const PolyMap& f) {
  for (const auto& c : f.components())
    if (c.is_zero() || c.degree() == 0) return false;
  return has_finite_zeros(f);
}

std::vector<Entry> build_corpus() {
  std::vector<std::pair<std::string, PolyMap>> systems{
      {"S1", S1()}, {"S2", S2()}, {"S3", S3()}, {"S4", S4()}, {"S5", S5()},
      {"no affine zeros", system_of({"Z1", "Z1 + 1"})},
      {"hyperbola", system_of({"Z1*Z2 - 1", "Z1^2 + Z2"})},
      {"shared line", system_of({"(Z1 - Z2)*Z1 + Z2", "(Z1 - Z2)*Z2 + 1"})},
      {"irrational points", system_of({"(Z1^2 + Z2^2)*Z1 + 1", "(Z1^2 + Z2^2) + Z2"})},
      {"mixed degrees", system_of({"(Z1^2 + Z2^2) + Z1", "(Z1^2 + Z2^2)*Z2 + Z1 + 1"})},
      {"cubic pair", system_of({"Z1^3 + Z2", "Z1^2*Z2 + Z1 - 1"})},
      {"double zero", system_of({"(Z1 - 1)^2*(Z1 + 2)", "Z2 - Z1^2"})},
      {"quadratic 3", system_of({"Z1*Z2 + Z3", "Z1*Z3 + Z2 - 1", "Z1 + Z2 + Z3"})},
      {"deficient 3", system_of({"Z2*Z3 - Z1", "Z1*Z3 - 2", "Z3^2 + Z1*Z2"})},
  };
  for (int d1 : {1, 2})
    for (int d2 : {2, 3}) {
      std::string e = "Z1^" + std::to_string(d1) + " - 1";
      systems.push_back({"family " + std::to_string(d1) + "," + std::to_string(d2),
                         system_of({e, "Z1*Z2 + Z2^" + std::to_string(d2)})});
    }

  SeededInts rng(2024);
  // Random dense pairs over every degree pair up to 4.
  for (int k = 0; k < 32; ++k) {
    int d1 = 1 + k % 4, d2 = 1 + (k / 4) % 4;
    for (;;) {
      PolyMap f({random_poly(rng, 2, d1), random_poly(rng, 2, d2)});
      if (!usable(f)) continue;
      systems.push_back({"dense " + std::to_string(d1) + "x" + std::to_string(d2) + " #" + std::to_string(k), f});
      break;
    }
  }
  // Small dense triples.
  for (int k = 0; k < 6; ++k) {
    int d = 1 + k % 2;
    for (;;) {
      PolyMap f({random_poly(rng, 3, 2, 3, 0.7), random_poly(rng, 3, d, 3, 0.7), random_poly(rng, 3, 2, 3, 0.7)});
      if (!usable(f)) continue;
      systems.push_back({"dense triple #" + std::to_string(k), f});
      break;
    }
  }
  // Leading forms sharing a linear factor, so V_inf is nonempty.
  for (int k = 0; k < 8; ++k) {
    int d1 = 2 + k % 2, d2 = 2 + (k / 2) % 2;
    for (;;) {
      Poly l = Poly::variable(2, 0) * Rational(rng.next_nonzero(3)) + Poly::variable(2, 1) * Rational(rng.next_nonzero(3));
      PolyMap f({l * random_form(rng, 2, d1 - 1) + random_poly(rng, 2, d1 - 1),
                 l * random_form(rng, 2, d2 - 1) + random_poly(rng, 2, d2 - 1)});
      if (!usable(f)) continue;
      systems.push_back({"shared factor " + std::to_string(d1) + "x" + std::to_string(d2) + " #" + std::to_string(k), f});
      break;
    }
  }

  std::vector<Entry> corpus;
  for (auto& [name, f] : systems) corpus.push_back({name, f, noether_exponent(f)});
  return corpus;
}

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;
  void fail(const std::string& what) {
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// 1
Outcome bezout_deficit(const std::vector<Entry>& corpus) {
  Outcome o;
  for (const auto& e : corpus) {
    auto pts = zeros_at_infinity(e.f);
    long long sum = 0;
    for (const auto& p : pts) sum += intersection_number_at(e.f, p);
    if (sum != e.f.bezout_number() - static_cast<long long>(e.noether.mu)) o.fail(e.name);
  }
  o.detail = std::to_string(corpus.size()) + " systems";
  if (corpus.size() < 50) o.fail("corpus smaller than 50");
  return o;
}

// 2
Outcome euler_jacobi(const std::vector<Entry>& corpus) {
  Outcome o;
  std::size_t monomials = 0;
  for (const auto& e : corpus) {
    auto j = jacobi_verify(e.f, e.noether.nu, 0);
    monomials += j.checked.size();
    if (!j.all_zero) o.fail(e.name);
    if (e.name == "S4" && j.checked != std::vector<std::string>{"1", "Z2", "Z1"}) o.fail("S4 coverage");
  }
  o.detail = std::to_string(monomials) + " monomials below threshold, all residues 0";
  return o;
}

// 3
Outcome trace_identity(const std::vector<Entry>& corpus) {
  Outcome o;
  std::map<std::string, long> expected{{"S2", 4}, {"S3", 3}, {"S5", 2}};
  for (const auto& e : corpus) {
    ResidueEngine engine(e.f, {0, 1e-8, false});
    auto r = engine.report(jacobian(e.f));
    Rational mu(static_cast<long>(e.noether.mu));
    if (!r.global_sum_exact || *r.global_sum_exact != mu) o.fail(e.name);
    if (expected.count(e.name) && mu != expected[e.name]) o.fail(e.name + " value");
  }
  o.detail = "global_residue(J) = mu on all systems; S2=4, S3=3, S5=2";
  return o;
}

// 4
Outcome sandwich(const std::vector<Entry>& corpus) {
  Outcome o;
  std::map<std::string, int> expected{{"S4", 0}, {"S3", 1}, {"S5", 2}};
  for (const auto& e : corpus) {
    const auto& b = e.noether.bounds;
    if (b.lower_21 && *b.lower_21 > e.noether.nu) o.fail(e.name + " lower");
    if (e.noether.nu > b.upper_13 || b.upper_13 > b.upper_12) o.fail(e.name + " upper");
    if (expected.count(e.name) && e.noether.nu != expected[e.name]) o.fail(e.name + " nu");
  }
  o.detail = "nu(S4)=0, nu(S3)=1, nu(S5)=2";
  return o;
}

// 5
Outcome transversality(const std::vector<Entry>& corpus) {
  Outcome o;
  int applicable = 0;
  for (const auto& e : corpus) {
    if (e.noether.points.empty()) continue;
    bool all = true;
    for (const auto& p : e.noether.points) all = all && p.transversal;
    if (!all) continue;
    ++applicable;
    if (e.noether.nu != 1) o.fail(e.name + " nu");
    // Threshold sum(d_i - 1) - 1.
    auto j = jacobi_verify(e.f, 1, 0);
    if (j.threshold != e.f.degree_excess() - 1 || !j.all_zero) o.fail(e.name + " jacobi");
  }
  if (applicable == 0) o.fail("no transversal system in corpus");
  o.detail = std::to_string(applicable) + " systems with V_inf nonempty and transversal";
  return o;
}

// 6
Outcome division(const std::vector<Entry>& corpus) {
  Outcome o;
  SeededInts rng(77);
  std::size_t certified = 0, violations = 0, deficit_certified = 0;
  for (const auto& e : corpus) {
    const std::size_t n = e.f.nvars();
    std::vector<Poly> ps;
    for (int k = 0; k < 25; ++k) {
      Poly p(n);
      for (std::size_t i = 0; i < n; ++i) p += random_poly(rng, n, k % 3, 3, 0.8) * e.f[i];
      ps.push_back(p);
    }
    Divider d(e.f);
    for (auto [nu, counter] : {std::pair<long long, std::size_t*>{e.noether.nu, &certified},
                               std::pair<long long, std::size_t*>{e.noether.bounds.upper_12, &deficit_certified}}) {
      try {
        for (const auto& c : d.divide_all(ps, static_cast<int>(nu))) {
          bool ok = c.verified && verify_certificate(c, e.f);
          for (const auto& a : c.audit) ok = ok && a.within;
          if (ok)
            ++*counter;
          else
            o.fail(e.name + " unverified");
        }
      } catch (const DivisionError& err) {
        ++violations;
        o.fail(e.name + ": " + err.what() + " at nu=" + std::to_string(nu));
      }
    }
  }
  o.detail = std::to_string(certified) + " certificates at nu, " + std::to_string(deficit_certified) +
             " at upper_12, " + std::to_string(violations) + " bound violations";
  return o;
}

// 7
Outcome agreement(const std::vector<Entry>& corpus) {
  Outcome o;
  std::size_t comparisons = 0;
  for (const auto& e : corpus) {
    const std::size_t n = e.f.nvars();
    ResidueEngine engine(e.f);
    std::vector<Poly> gs{Poly::constant(n, Rational(1)), Poly::variable(n, 0) * Poly::variable(n, 0), jacobian(e.f),
                         Poly::variable(n, n - 1) * Poly::variable(n, 0) + Poly::constant(n, Rational(2))};
    for (const auto& g : gs) {
      auto r = engine.report(g);
      if (r.methods.size() >= 2) ++comparisons;
      if (!r.agree) o.fail(e.name + " G=" + to_string(g) + ": " + r.disagreement);
    }
  }
  // S3 values through every method.
  for (const auto& [g, value] : {std::pair{"1", 0}, std::pair{"Z1^2", 1}}) {
    ResidueEngine engine(S3());
    auto r = engine.report(P(g));
    bool has_tl = false, has_pert = false;
    for (const auto& m : r.methods) {
      if (m.exact && *m.exact != value) o.fail("S3 " + m.method);
      if (std::abs(m.value - Complex(value)) > 1e-8) o.fail("S3 numeric " + m.method);
      has_tl = has_tl || m.method == "transformation_law";
      has_pert = has_pert || m.method == "perturbation";
    }
    if (!has_tl || !has_pert) o.fail("S3 methods missing");
  }
  o.detail = std::to_string(comparisons) + " multi-method comparisons";
  return o;
}

// 8
Outcome growth(const std::vector<Entry>& corpus) {
  Outcome o;
  double worst = 1e9;
  for (const auto& e : corpus) {
    GrowthOptions go;
    auto g = growth_scan(e.f, e.noether.nu, static_cast<long long>(e.noether.mu), go);
    worst = std::min(worst, g.exponent_fitted - g.exponent_claimed);
    if (!g.consistent || !g.consistent_deficit) o.fail(e.name + " slope " + fmt(g.exponent_fitted));
    if (e.name == "S2") {
      auto v = properness_verdict(e.f, e.noether, &g);
      if (v.verdict != "proper (certified)" || std::abs(g.exponent_fitted - 2) > 0.1) o.fail("S2");
    }
    if (e.name == "S5") {
      auto v = properness_verdict(e.f, e.noether, &g);
      if (std::abs(g.exponent_fitted) > 0.1 || !g.bounded_direction || v.verdict != "criterion inconclusive")
        o.fail("S5");
    }
  }
  o.detail = "min(fitted - claimed) = " + fmt(worst);
  return o;
}

// 9
Outcome example_family(const std::string& log_path) {
  Outcome o;
  std::ofstream log(log_path);
  log << "# Sum of residues of G=1 for F = (Z1^d1 - 1, Z1*Z2 + Z2^d2); stated value -1.\n";
  log << "d1 d2 V_inf exact simple_zero_sum perturbation stated matches_stated\n";
  for (int d1 : {1, 2})
    for (int d2 : {2, 3}) {
      PolyMap f = system_of({"Z1^" + std::to_string(d1) + " - 1", "Z1*Z2 + Z2^" + std::to_string(d2)});
      ResidueEngine engine(f);
      Poly one = Poly::constant(2, Rational(1));
      auto r = engine.report(one);
      auto simple = engine.simple_zero_sum(one);
      auto pert = engine.perturbation(one);
      if (!r.global_sum_exact || !simple || !pert) {
        o.fail("family " + std::to_string(d1) + "," + std::to_string(d2) + " oracle missing");
        continue;
      }
      double exact = r.global_sum_exact->get_d();
      if (std::abs(*simple - exact) > 1e-8 || std::abs(pert->value - exact) > 1e-8 || !r.agree)
        o.fail("family " + std::to_string(d1) + "," + std::to_string(d2) + " disagreement");
      char line[256];
      std::snprintf(line, sizeof line, "%d %d %zu %s %.3e %.3e -1 %s\n", d1, d2, zeros_at_infinity(f).size(),
                    to_string(*r.global_sum_exact).c_str(), simple->real(), pert->value.real(),
                    *r.global_sum_exact == -1 ? "yes" : "no");
      log << line;
    }
  auto pts = zeros_at_infinity(S5());
  auto cones = tangent_cone_data(S5(), pts.at(0));
  auto s5 = global_residue(S5(), P("1"));
  log << "S5 (Z1^2 - 1, Z1*Z2): distinct cones " << (cones.distinct ? "yes" : "no") << ", condition (ii) "
      << (cones.condition_ii ? "holds" : "fails") << ", sum res(1) = " << to_string(*s5.global_sum_exact) << "\n";
  if (!cones.distinct || cones.condition_ii || *s5.global_sum_exact != 1) o.fail("S5 phenomenon");
  o.detail = "family sums agree across oracles; log at " + log_path;
  return o;
}

// 10
Outcome determinism(const std::vector<Entry>& corpus, const std::string& cli) {
  Outcome o;
  int runs = 0;
  for (std::size_t i = 0; i < corpus.size(); i += 7) {
    const auto& e = corpus[i];
    ReportContext ctx;
    ctx.names = default_names(e.f.nvars());
    ctx.seed = 11;
    SystemFile sys;
    sys.variables = ctx.names;
    for (const auto& c : e.f.components()) sys.polynomials.push_back(to_string(c));
    auto a = envelope("report-all", sys, ctx, report_all(e.f, ctx).body).dump(2);
    auto b = envelope("report-all", sys, ctx, report_all(e.f, ctx).body).dump(2);
    if (a != b) o.fail(e.name);
    ++runs;
  }
  if (!cli.empty()) {
    // Through the executable, with the timestamp field removed before comparison.
    auto run = [&](const std::string& args) {
      std::string out;
      FILE* p = popen((cli + " " + args).c_str(), "r");
      if (!p) return out;
      char buf[4096];
      std::size_t k;
      while ((k = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, k);
      pclose(p);
      auto j = json::parse(out, nullptr, false);
      if (j.is_discarded()) return std::string("unparsable");
      j.erase("timestamp");
      return j.dump(2);
    };
    for (const std::string sys : {"Z1^2 - Z2; Z1*Z2", "Z1^2 - 1; Z1*Z2", "Z1^3 + Z2 - 1; Z1*Z2^2 - Z1 + 2"}) {
      std::string args = "report-all --seed 5 --timestamp -e '" + sys + "'";
      auto a = run(args), b = run(args);
      if (a.empty() || a == "unparsable" || a != b) o.fail("cli " + sys);
      ++runs;
    }
  }
  o.detail = std::to_string(runs) + " report-all pairs byte-identical";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";
  std::string log_path = argc > 2 ? argv[2] : "example_family_audit.log";

  auto t0 = std::chrono::steady_clock::now();
  auto corpus = build_corpus();
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Bezout deficit", [&] { return bezout_deficit(corpus); }},
      {"Euler-Jacobi vanishing", [&] { return euler_jacobi(corpus); }},
      {"Jacobian trace identity", [&] { return trace_identity(corpus); }},
      {"Noether exponent sandwich", [&] { return sandwich(corpus); }},
      {"Transversality clause", [&] { return transversality(corpus); }},
      {"Division certificates", [&] { return division(corpus); }},
      {"Residue method agreement", [&] { return agreement(corpus); }},
      {"Growth consistency", [&] { return growth(corpus); }},
      {"Example family audit", [&] { return example_family(log_path); }},
      {"Determinism", [&] { return determinism(corpus, cli); }},
  };

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << i + 1 << " (" << criteria[i].first << "): " << o.detail
              << " [" << fmt(secs) << " s]\n";
    for (const auto& f : o.failures) std::cout << "      failed: " << f << "\n";
  }
  double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << "corpus " << corpus.size() << " systems, total " << fmt(total) << " s\n";
  return all ? 0 : 1;
}
