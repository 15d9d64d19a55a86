#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nejac/parse.hpp"
#include "nejac/poly.hpp"
#include "test_support.hpp"

using namespace nejac;
using nejac::testing::P;

namespace {
Poly H(const std::string& s) { return parse_poly(s, default_names(3, true)); }
}  // namespace

TEST_CASE("homogenize examples") {
  CHECK(homogenize(P("Z1^2 - 1")).form == H("Z1^2 - Z0^2"));
  CHECK(homogenize(P("Z1*Z2 + Z2^2")).form == H("Z1*Z2 + Z2^2"));
  CHECK(homogenize(P("Z1^2 - Z2")).form == H("Z1^2 - Z2*Z0"));
  CHECK(homogenize(P("Z1^2 - Z2")).degree == 2);
  CHECK_THROWS_WITH(homogenize(Poly(2)), "cannot homogenize zero");
}

TEST_CASE("dehomogenize examples") {
  CHECK(dehomogenize({H("Z1^2 - Z0^2"), 2}) == P("Z1^2 - 1"));
  CHECK(dehomogenize({H("Z0^3"), 3}) == P("1"));
  CHECK(dehomogenize({H("Z1*Z2"), 2}) == P("Z1*Z2"));
}

TEST_CASE("jacobian examples") {
  CHECK(jacobian(nejac::testing::S1()) == P("1"));
  CHECK(jacobian(nejac::testing::S2()) == P("4*Z1*Z2"));
  CHECK(jacobian(nejac::testing::S3()) == P("2*Z1^2 + Z2"));
}

TEST_CASE("evaluation examples") {
  std::vector<Complex> one{Complex(1)};
  CHECK(std::abs(eval(P("Z1^2 - 1", 1), one)) == 0.0);
  std::vector<Rational> pt{Rational(1), Rational(-1)};
  CHECK(eval_exact(P("Z1*Z2 + Z2^2"), pt) == 0);
  std::vector<Rational> origin{Rational(0), Rational(0)};
  CHECK(eval_exact(P("2*Z1^2 + Z2"), origin) == 0);
  std::vector<Rational> wrong{Rational(0)};
  CHECK_THROWS_AS(eval_exact(P("Z1"), wrong), std::invalid_argument);
}

TEST_CASE("degree sentinel") {
  Poly zero(2);
  CHECK_FALSE(zero.degree_or_none().has_value());
  CHECK_THROWS_AS(zero.degree(), std::domain_error);
  CHECK_THROWS_AS(zero.order(), std::domain_error);
}

TEST_CASE("polynomial arithmetic properties") {
  SeededInts rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 2;
    Poly p = nejac::testing::random_poly(rng, n, 1 + trial % 3, 4, 0.7);
    Poly q = nejac::testing::random_poly(rng, n, 1 + trial % 4, 4, 0.7);
    if (p.is_zero() || q.is_zero()) continue;
    CHECK((p * q).degree() == p.degree() + q.degree());
    CHECK(dehomogenize(homogenize(p)) == p);
    HForm h = homogenize(p);
    CHECK(h.form.is_homogeneous());
    CHECK(h.form.degree() == p.degree());

    // Exact and floating evaluation agree at small rational points.
    std::vector<Rational> xq;
    std::vector<Complex> xc;
    for (std::size_t i = 0; i < n; ++i) {
      Rational r(rng.next(-5, 5), rng.next(1, 4));
      r.canonicalize();
      xq.push_back(r);
      xc.emplace_back(r.get_d(), 0.0);
    }
    CHECK(std::abs(eval(p, xc) - eval_exact(p, xq).get_d()) < 1e-12 * std::max(1.0, std::abs(eval(p, xc))));
  }
}

TEST_CASE("jacobian of an affine map is the determinant of its linear part") {
  SeededInts rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 3;
    std::vector<Poly> comps;
    std::vector<std::vector<Poly>> lin(n);
    for (std::size_t i = 0; i < n; ++i) {
      Poly c = Poly::constant(n, Rational(rng.next(-5, 5)));
      for (std::size_t j = 0; j < n; ++j) {
        Rational a = rng.next(-3, 3);
        c += Poly::variable(n, j) * a;
        lin[i].push_back(Poly::constant(n, a));
      }
      comps.push_back(c);
    }
    bool any_zero = false;
    for (const auto& c : comps) any_zero = any_zero || c.is_zero();
    if (any_zero) continue;
    CHECK(jacobian(PolyMap(comps)) == determinant(lin, n));
    CHECK(jacobian(PolyMap(comps)).is_constant());
  }
}

TEST_CASE("composition substitutes variables") {
  std::vector<Poly> images{P("Z1 + Z2"), P("Z1 - Z2")};
  CHECK(P("Z1*Z2").compose(std::span<const Poly>(images)) == P("Z1^2 - Z2^2"));
}

TEST_CASE("parser accepts the documented grammar") {
  CHECK(P("2Z1^2Z2") == P("2*Z1^2*Z2"));
  CHECK(P("Z1 Z2") == P("Z1*Z2"));
  CHECK(P("1/2 Z1 - 3/4") == P("(2*Z1 - 3)/4"));
  CHECK(P("-(Z1 + 1)^2") == P("-Z1^2 - 2*Z1 - 1"));
  CHECK(P("Z1Z2^2") == P("Z1*Z2^2"));
  CHECK(P("  Z1   +Z2 ") == P("Z2+Z1"));
  CHECK(parse_poly("x*y - 1", {"x", "y"}) == P("Z1*Z2 - 1"));
}

TEST_CASE("parser errors carry positions") {
  try {
    (void)P("Z1 + ");
    FAIL("expected a syntax error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 6);
  }
  CHECK_THROWS_AS(P("Z3 + 1"), ParseError);
  CHECK_THROWS_AS(P("Z1 / Z2"), ParseError);
  CHECK_THROWS_AS(P("Z1 ^ -1"), ParseError);
  CHECK_THROWS_AS(P("(Z1 + 1"), ParseError);
  CHECK_THROWS_AS(P("1.5 Z1"), ParseError);
}

TEST_CASE("system files") {
  PolyMap f = parse_system("Z1^2 - 1\nZ1*Z2 + Z2^2\n");
  CHECK(f.degrees() == std::vector<int>{2, 2});
  PolyMap g = parse_system("# comment\nname: S3\nZ1^2 - Z2\nZ1 Z2\n");
  CHECK(g.degrees() == std::vector<int>{2, 2});
  CHECK(parse_system("Z1^2-1; Z2^2-1").degrees() == std::vector<int>{2, 2});
  SystemFile sys = read_system("vars: x, y\nexpect: nu = 2\nx^2 - 1\nx y\n");
  CHECK(sys.expected.at("nu") == "2");
  CHECK(to_polymap(sys)[1] == P("Z1*Z2"));
  try {
    (void)parse_system("Z1^2\nZ1 + ");
    FAIL("expected a syntax error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_system("vars: Z1, Z2\nZ1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_system("Z1\nZ2\nZ3 + Z4"), ParseError);
}

TEST_CASE("printing round-trips through the parser") {
  SeededInts rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    Poly p = nejac::testing::random_poly(rng, 3, 3, 5, 0.5);
    p += Poly::term(Monomial({1, 0, 2}), Rational(3, 7));
    CHECK(parse_poly(to_string(p), 3) == p);
  }
  CHECK(to_string(P("Z1^2 - Z2")) == "Z1^2 - Z2");
  CHECK(to_string(P("-1/2*Z1*Z2 + 3")) == "-1/2*Z1*Z2 + 3");
}
