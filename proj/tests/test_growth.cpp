#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nejac/growth.hpp"
#include "test_support.hpp"

#include <sstream>

using namespace nejac;
using namespace nejac::testing;

TEST_CASE("default radii") {
  auto r = default_radii();
  REQUIRE(r.size() == 7);
  CHECK(r.front() == doctest::Approx(std::sqrt(10.0)));
  CHECK(r.back() == doctest::Approx(1000.0));
  for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i] > r[i - 1]);
}

TEST_CASE("growth examples") {
  auto s2 = growth_scan(S2(), 0, 4);
  CHECK(s2.label == "consistency evidence");
  CHECK(s2.exponent_claimed == 2);
  CHECK(std::abs(s2.exponent_fitted - 2.0) < 0.1);
  CHECK(s2.consistent);
  CHECK_FALSE(s2.bounded_direction.has_value());

  auto s5 = growth_scan(S5(), 2, 2);
  CHECK(s5.exponent_claimed == 0);
  CHECK(std::abs(s5.exponent_fitted) < 0.1);
  REQUIRE(s5.bounded_direction.has_value());
  // The minimiser runs off along Z1 = 0.
  CHECK(std::abs((*s5.bounded_direction)[0]) < 1e-3);
  CHECK(std::abs(std::abs((*s5.bounded_direction)[1]) - 1.0) < 1e-9);
  // max(|Z1^2 - 1|, R |Z1|) dips below 1 at small R and tends to 1.
  for (double v : s5.min_values) CHECK((v > 0.9 && v <= 1.0 + 1e-9));
  CHECK(s5.min_values.back() == doctest::Approx(1.0).epsilon(0.01));

  auto s1 = growth_scan(S1(), 0, 1);
  CHECK(std::abs(s1.exponent_fitted - 1.0) < 0.05);
}

TEST_CASE("properness verdicts") {
  auto r2 = noether_exponent(S2());
  CHECK(properness_verdict(S2(), r2).verdict == "proper (certified)");
  CHECK(properness_verdict(S3(), noether_exponent(S3())).verdict == "proper (certified)");
  auto r5 = noether_exponent(S5());
  auto g5 = growth_scan(S5(), r5.nu, static_cast<long long>(r5.mu));
  auto v5 = properness_verdict(S5(), r5, &g5);
  CHECK(v5.verdict == "criterion inconclusive");
  CHECK_FALSE(v5.certified);
  REQUIRE(v5.slope.has_value());
  CHECK(std::abs(*v5.slope) < 0.1);
  CHECK(v5.bounded_direction.has_value());
}

TEST_CASE("slope lower bounds on structured systems") {
  std::vector<PolyMap> systems{S1(), S2(), S3(), S4(), S5(),
                               system_of({"Z1*Z2 - 1", "Z1^2 + Z2"}),
                               system_of({"(Z1 - Z2)*Z1 + Z2", "(Z1 - Z2)*Z2 + 1"}),
                               system_of({"Z1*Z2 + Z3", "Z1*Z3 + Z2 - 1", "Z1 + Z2 + Z3"})};
  for (const auto& f : systems) {
    auto r = noether_exponent(f);
    auto g = growth_scan(f, r.nu, static_cast<long long>(r.mu));
    CHECK(g.consistent);
    CHECK(g.consistent_deficit);
    for (std::size_t i = 1; i < g.radii.size(); ++i) CHECK(g.radii[i] > g.radii[i - 1]);
    for (std::size_t i = 0; i < g.argmins.size(); ++i) {
      double norm = 0;
      for (const auto& c : g.argmins[i]) norm = std::max(norm, std::abs(c));
      CHECK(norm == doctest::Approx(g.radii[i]));
    }
  }
}

TEST_CASE("determinism and csv") {
  auto a = growth_scan(S3(), 1, 3);
  auto b = growth_scan(S3(), 1, 3);
  CHECK(a.min_values == b.min_values);
  CHECK(a.exponent_fitted == b.exponent_fitted);
  GrowthOptions o;
  o.seed = 9;
  auto c = growth_scan(S3(), 1, 3, o);
  CHECK(c.seed == 9);
  std::ostringstream os;
  write_growth_csv(a, os);
  std::string s = os.str();
  CHECK(s.rfind("radius,min_abs_F\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 8);
}

TEST_CASE("radii move past the onset radius when V_inf is empty") {
  // Leading forms nearly share a zero, so |F| / |z|^4 keeps falling until |z| ~ 10^3.
  PolyMap f = system_of({"3*Z1^4 - Z1^3*Z2 + Z1^2*Z2^2 + 2*Z1*Z2^3 - Z2^4 + 3*Z1^3 - 3*Z1^2*Z2 + Z1*Z2^2"
                         " - 2*Z2^3 + 2*Z1^2 - 2*Z1*Z2 + 2*Z2^2 + 2*Z1 - 1",
                         "Z1^4 + 3*Z1^3*Z2 + 3*Z1^2*Z2^2 + 3*Z1*Z2^3 - 2*Z2^4 - 3*Z1^3 + Z1^2*Z2 + 2*Z2^3"
                         " + 2*Z1^2 - Z1*Z2 + Z2^2 + Z1 + Z2"});
  auto g = growth_scan(f, 0, 16);
  REQUIRE(g.onset_radius.has_value());
  CHECK(*g.onset_radius > 1000);
  CHECK(g.radii.front() == doctest::Approx(*g.onset_radius));
  CHECK(g.exponent_fitted == doctest::Approx(4.0).epsilon(0.03));

  GrowthOptions fixed;
  fixed.adaptive = false;
  auto h = growth_scan(f, 0, 16, fixed);
  CHECK(h.radii == default_radii());
  CHECK(h.exponent_fitted < 3.5);

  // Well-conditioned and nu > 0 systems keep the default radii.
  CHECK(growth_scan(S2(), 0, 4).radii == default_radii());
  CHECK_FALSE(growth_scan(S5(), 2, 2).onset_radius.has_value());
}
