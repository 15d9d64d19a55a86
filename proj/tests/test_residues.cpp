#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nejac/residues.hpp"
#include "test_support.hpp"

using namespace nejac;
using namespace nejac::testing;

namespace {
AffineZero rational_zero(std::vector<Rational> q) {
  AffineZero z;
  for (const auto& c : q) z.coordinates.push_back(to_complex(c));
  z.exact = std::move(q);
  return z;
}

const MethodResult* method(const ResidueReport& r, const std::string& name) {
  for (const auto& m : r.methods)
    if (m.method == name) return &m;
  return nullptr;
}
}  // namespace

TEST_CASE("residue at simple zero examples") {
  CHECK(residue_at_simple_zero(S2(), rational_zero({1, 1}), P("1")).exact == Rational(1, 4));
  CHECK(residue_at_simple_zero(S4(), rational_zero({1, -1}), P("1")).exact == Rational(-1, 2));
  CHECK(residue_at_simple_zero(S1(), rational_zero({0, 0}), P("1")).exact == Rational(1));
  AffineZero origin = rational_zero({0, 0});
  origin.multiplicity = 3;
  CHECK_THROWS_WITH_AS(residue_at_simple_zero(S3(), origin, P("1")), "zero is not simple", ResidueError);
}

TEST_CASE("global residue examples") {
  CHECK(global_residue(S2(), jacobian(S2())).global_sum_exact == Rational(4));
  CHECK(global_residue(S3(), P("1")).global_sum_exact == Rational(0));
  CHECK(global_residue(S3(), P("Z1^2")).global_sum_exact == Rational(1));
  CHECK(global_residue(S5(), P("1")).global_sum_exact == Rational(1));
}

TEST_CASE("perturbation oracle examples") {
  ResidueEngine e2(S2());
  auto p2 = e2.perturbation(P("1"));
  REQUIRE(p2.has_value());
  CHECK(std::abs(p2->value) < 1e-9);

  ResidueEngine e3(S3());
  auto p3 = e3.perturbation(jacobian(S3()));
  REQUIRE(p3.has_value());
  CHECK(std::abs(p3->value - 3.0) < 1e-8);

  ResidueEngine e1(S1());
  auto p1 = e1.perturbation(P("1"));
  REQUIRE(p1.has_value());
  CHECK(std::abs(p1->value - 1.0) < 1e-9);
}

TEST_CASE("methods agree on S3") {
  for (const auto& [g, expected] : {std::pair{"1", 0}, std::pair{"Z1^2", 1}}) {
    ResidueEngine e(S3());
    auto r = e.report(P(g));
    CHECK(r.agree);
    CHECK(r.global_sum_exact == Rational(expected));
    REQUIRE(method(r, "transformation_law"));
    CHECK(method(r, "transformation_law")->exact == Rational(expected));
    REQUIRE(method(r, "perturbation"));
    CHECK(std::abs(method(r, "perturbation")->value - double(expected)) < 1e-8);
    CHECK(method(r, "cluster_sum"));
    CHECK_FALSE(method(r, "trace"));
  }
}

TEST_CASE("jacobian trace identity and Euler-Jacobi on small systems") {
  std::vector<PolyMap> systems{S1(), S2(), S3(), S4(), S5(),
                               system_of({"Z1*Z2 - 1", "Z1^2 + Z2"}),
                               system_of({"(Z1 - 1)^2*(Z1 + 2)", "Z2 - Z1^2"}),
                               system_of({"Z1^2 - 2", "Z2^2 + Z1*Z2 + 1"}),
                               system_of({"Z1*Z2 + Z3", "Z1*Z3 + Z2 - 1", "Z1 + Z2 + Z3"})};
  for (const auto& f : systems) {
    ResidueEngine e(f);
    CHECK(e.bezoutian(jacobian(f)) == Rational(static_cast<long>(e.algebra().mu())));
    auto r = e.report(jacobian(f));
    CHECK(r.agree);
    auto j = jacobi_verify(f, 2);
    CHECK(j.all_zero);
    CHECK(j.methods_agree);
  }
}

TEST_CASE("bezoutian matches simple zero sums for random monomials") {
  SeededInts rng(31);
  int tested = 0;
  for (int trial = 0; trial < 30 && tested < 8; ++trial) {
    std::vector<Poly> comps{random_poly(rng, 2, 2), random_poly(rng, 2, 1 + trial % 3)};
    if (comps[0].is_zero() || comps[1].is_zero()) continue;
    PolyMap f(comps);
    if (!is_zero_dimensional(f)) continue;
    ResidueEngine e(f, {0, 1e-8, false});
    if (e.algebra().mu() == 0 || !e.all_simple()) continue;
    ++tested;
    for (const auto& m : monomials_up_to(2, 3)) {
      Poly g = Poly::term(m, Rational(1));
      auto s = e.simple_zero_sum(g);
      REQUIRE(s.has_value());
      Rational b = e.bezoutian(g);
      CHECK(std::abs(*s - b.get_d()) < 1e-8 * std::max(1.0, std::abs(b.get_d())));
      auto t = e.trace_formula(g);
      REQUIRE(t.has_value());
      CHECK(*t == b);
      if (auto tl = e.transformation_law(g)) CHECK(*tl == b);
    }
  }
  CHECK(tested >= 5);
}

TEST_CASE("jacobi verify examples") {
  auto j4 = jacobi_verify(S4(), 2);
  CHECK(j4.nu == 0);
  CHECK(j4.threshold == 2);
  CHECK(j4.checked == std::vector<std::string>{"1", "Z2", "Z1"});
  CHECK(j4.all_zero);
  CHECK_FALSE(j4.witnesses.empty());

  auto j3 = jacobi_verify(S3(), 2);
  CHECK(j3.nu == 1);
  CHECK(j3.threshold == 1);
  CHECK(j3.checked == std::vector<std::string>{"1"});
  CHECK(j3.all_zero);
  bool z1sq = false;
  for (const auto& [m, v] : j3.witnesses) z1sq = z1sq || (m == "Z1^2" && v == 1);
  CHECK(z1sq);

  auto j5 = jacobi_verify(S5(), 2);
  CHECK(j5.nu == 2);
  CHECK(j5.threshold == 0);
  CHECK(j5.checked.empty());
  REQUIRE_FALSE(j5.witnesses.empty());
  CHECK(j5.witnesses[0].first == "1");
  CHECK(j5.witnesses[0].second == 1);
}

TEST_CASE("cluster residues for multiple zeros") {
  PolyMap f = system_of({"(Z1 - 1)^2*(Z1 + 2)", "Z2 - Z1^2"});
  ResidueEngine e(f);
  auto r = e.report(P("Z1 + 3"));
  CHECK(r.agree);
  Rational sum = 0;
  for (const auto& z : r.per_zero) {
    REQUIRE(z.exact.has_value());
    sum += *z.exact;
  }
  CHECK(sum == *r.global_sum_exact);
}
