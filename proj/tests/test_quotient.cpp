#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nejac/quotient.hpp"
#include "test_support.hpp"

#include <algorithm>

using namespace nejac;
using namespace nejac::testing;

namespace {
bool near(Complex a, Complex b, double tol = 1e-8) { return std::abs(a - b) < tol; }

bool has_zero(const ZeroSet& zs, std::vector<Complex> pt, int mult) {
  return std::any_of(zs.zeros.begin(), zs.zeros.end(), [&](const AffineZero& z) {
    for (std::size_t i = 0; i < pt.size(); ++i)
      if (!near(z.coordinates[i], pt[i])) return false;
    return z.multiplicity == mult;
  });
}
}  // namespace

TEST_CASE("zero-dimensionality examples") {
  CHECK(is_zero_dimensional(S1()));
  CHECK(is_zero_dimensional(S3()));
  CHECK_FALSE(is_zero_dimensional(system_of({"Z1*Z2", "Z1"})));
  try {
    (void)build_quotient(system_of({"Z1*Z2", "Z1"}));
    FAIL("expected NotZeroDimensional");
  } catch (const NotZeroDimensional& e) {
    CHECK(e.variable() == 1);
  }
}

TEST_CASE("quotient examples") {
  auto q2 = build_quotient(S2());
  CHECK(q2.mu() == 4);
  std::vector<Monomial> expected{Monomial({0, 0}), Monomial({1, 0}), Monomial({0, 1}), Monomial({1, 1})};
  std::vector<Monomial> got = q2.basis();
  std::sort(got.begin(), got.end());
  std::sort(expected.begin(), expected.end());
  CHECK(got == expected);
  CHECK(q2.basis()[0].is_one());

  auto q3 = build_quotient(S3());
  CHECK(q3.mu() == 3);
  CHECK(build_quotient(S4()).mu() == 4);
  CHECK(build_quotient(S5()).mu() == 2);
  CHECK(build_quotient(S1()).mu() == 1);
}

TEST_CASE("multiplication matrices commute and reproduce normal forms") {
  SeededInts rng(23);
  std::vector<PolyMap> systems{S1(), S2(), S3(), S4(), S5()};
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<Poly> comps{random_poly(rng, 2, 2), random_poly(rng, 2, 2)};
    if (comps[0].is_zero() || comps[1].is_zero()) continue;
    PolyMap f(comps);
    if (is_zero_dimensional(f)) systems.push_back(f);
  }
  for (const auto& f : systems) {
    auto qa = build_quotient(f);
    const std::size_t n = qa.nvars();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        CHECK((qa.mult_matrix(i) * qa.mult_matrix(j) == qa.mult_matrix(j) * qa.mult_matrix(i)));
      std::vector<Rational> one = qa.coords(Poly::constant(n, Rational(1)));
      std::vector<Rational> image(qa.mu(), Rational(0));
      for (std::size_t r = 0; r < qa.mu(); ++r)
        for (std::size_t c = 0; c < qa.mu(); ++c) image[r] += qa.mult_matrix(i)(r, c) * one[c];
      CHECK(qa.from_coords(image) == normal_form(Poly::variable(n, i), qa.groebner_basis()));
    }
  }
}

TEST_CASE("solve examples") {
  auto z2 = solve_zeros(S2());
  CHECK(z2.zeros.size() == 4);
  for (double a : {-1.0, 1.0})
    for (double b : {-1.0, 1.0}) CHECK(has_zero(z2, {a, b}, 1));
  for (const auto& z : z2.zeros) CHECK(z.is_rational());

  auto z3 = solve_zeros(S3());
  REQUIRE(z3.zeros.size() == 1);
  CHECK(has_zero(z3, {0.0, 0.0}, 3));
  CHECK(z3.zeros[0].is_rational());

  auto z4 = solve_zeros(S4());
  CHECK(z4.zeros.size() == 4);
  CHECK(has_zero(z4, {1.0, 0.0}, 1));
  CHECK(has_zero(z4, {1.0, -1.0}, 1));
  CHECK(has_zero(z4, {-1.0, 0.0}, 1));
  CHECK(has_zero(z4, {-1.0, 1.0}, 1));
}

TEST_CASE("irrational and mixed zeros") {
  auto zs = solve_zeros(system_of({"Z1^2 - 2", "Z2^2 + 1"}));
  CHECK(zs.zeros.size() == 4);
  for (const auto& z : zs.zeros) CHECK_FALSE(z.is_rational());
  CHECK(has_zero(zs, {std::sqrt(2.0), Complex(0, 1)}, 1));

  // (Z1 - 1)^2 (Z1 + 2) with Z2 tied to Z1: one double and one simple zero.
  auto mixed = solve_zeros(system_of({"(Z1 - 1)^2*(Z1 + 2)", "Z2 - Z1^2"}));
  CHECK(has_zero(mixed, {1.0, 1.0}, 2));
  CHECK(has_zero(mixed, {-2.0, 4.0}, 1));
}

TEST_CASE("multiplicities sum to mu and traces match zero sums") {
  SeededInts rng(41);
  int tested = 0;
  for (int trial = 0; trial < 20 && tested < 8; ++trial) {
    std::vector<Poly> comps{random_poly(rng, 2, 2), random_poly(rng, 2, 1 + trial % 3)};
    if (comps[0].is_zero() || comps[1].is_zero()) continue;
    PolyMap f(comps);
    if (!is_zero_dimensional(f)) continue;
    auto qa = build_quotient(f);
    if (qa.mu() == 0) continue;
    ++tested;
    auto zs = solve_zeros_retry(qa, f.components(), {});
    int total = 0;
    for (const auto& z : zs.zeros) {
      total += z.multiplicity;
      for (const auto& fi : f.components()) CHECK(std::abs(eval(fi, z.coordinates)) < 1e-6);
    }
    CHECK(total == static_cast<int>(qa.mu()));
    for (int k = 0; k < 3; ++k) {
      Poly h = random_poly(rng, 2, 2);
      Complex sum = 0;
      for (const auto& z : zs.zeros) sum += static_cast<double>(z.multiplicity) * eval(h, z.coordinates);
      CHECK(std::abs(sum - qa.trace(h).get_d()) < 1e-8 * std::max(1.0, std::abs(sum)) * 10);
    }
  }
  CHECK(tested >= 5);
}

TEST_CASE("eliminant examples") {
  CHECK(eliminant(S2(), 0).as_poly == P("Z1^2 - 1"));
  CHECK(eliminant(S3(), 0).as_poly == P("Z1^3"));
  CHECK(eliminant(S3(), 1).as_poly == P("Z2^2"));
  for (const auto& f : {S2(), S3(), S4(), S5()}) {
    auto qa = build_quotient(f);
    for (std::size_t i = 0; i < 2; ++i) {
      auto e = eliminant(qa, i);
      CHECK(e.poly.degree() <= static_cast<int>(qa.mu()));
      CHECK(membership_with_cofactors(e.as_poly, f.components(), MonomialOrder::degrevlex(2)).has_value());
    }
  }
}

TEST_CASE("solver is deterministic for a fixed seed") {
  auto a = solve_zeros(S4(), {1e-8, 9});
  auto b = solve_zeros(S4(), {1e-8, 9});
  REQUIRE(a.zeros.size() == b.zeros.size());
  CHECK(a.combination == b.combination);
  for (std::size_t k = 0; k < a.zeros.size(); ++k) CHECK(a.zeros[k].coordinates == b.zeros[k].coordinates);
}
