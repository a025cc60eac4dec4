#include <doctest.h>

#include <cmath>

#include "coaxheat/model.hpp"

using namespace coaxheat;

namespace {

std::map<std::string, std::string> base_config() {
  std::map<std::string, std::string> c;
  for (const char* r : {"f", "s", "g", "p"}) {
    c[std::string("E_") + r] = "1";
    c[std::string("S_") + r] = "0";
    c[std::string("T0_") + r] = "1";
  }
  for (int j = 1; j <= 6; ++j) c["K_" + std::to_string(j)] = "1";
  c["f_f"] = "1";
  c["f_g"] = "1";
  c["f_0"] = "1";
  c["g_0"] = "1";
  c["horizon"] = "0.5";
  return c;
}

}  // namespace

TEST_CASE("build_problem populates and validates a complete config") {
  const ProblemSpec p = build_problem(base_config());
  CHECK(p.f0 == 1.0);
  CHECK(p.horizon == 0.5);
  CHECK(p.E[1].eval(0.3, 0.0) == doctest::Approx(1.0));
  CHECK(p.K[5].eval(0.9, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("missing keys are reported by name") {
  auto c = base_config();
  c.erase("K_3");
  CHECK_THROWS_WITH_AS(build_problem(c), doctest::Contains("K_3"),
                       ModelError);
}

TEST_CASE("hypothesis violations name the offending quantity") {
  auto c = base_config();
  c["E_s"] = "x - 0.5";  // negative left of the midpoint
  CHECK_THROWS_WITH_AS(build_problem(c), doctest::Contains("E_s"),
                       ModelError);

  c = base_config();
  c["K_2"] = "-1";
  CHECK_THROWS_WITH_AS(build_problem(c), doctest::Contains("K_2"),
                       ModelError);

  c = base_config();
  c["f_f"] = "0";
  CHECK_THROWS_AS(build_problem(c), ModelError);

  c = base_config();
  c["T0_p"] = "cos(pi*x)";  // dips negative
  CHECK_THROWS_WITH_AS(build_problem(c), doctest::Contains("T0_p"),
                       ModelError);
}

TEST_CASE("shift produces homogeneous data and the lift round-trips") {
  auto c = base_config();
  c["f_0"] = "2";
  c["T0_f"] = "2";  // compatible with the inlet
  const ProblemSpec p = build_problem(c);
  const HomogeneousProblem h = shift_to_homogeneous(p);

  CHECK(h.U0[0].eval(0.0, 0.0) == doctest::Approx(0.0));  // T0_f - f0
  CHECK(h.U0[2].eval(1.0, 0.0) == doctest::Approx(0.0));  // T0_g - g0
  CHECK(h.warnings.empty());

  // Shifted source for the separating wall: f0 K2 + g0 K3 + S_s = 3 here.
  CHECK(h.source[1].eval(0.4, 0.1) == doctest::Approx(3.0));
  // Fluid: -f0 K1 + S_f = -2.
  CHECK(h.source[0].eval(0.4, 0.1) == doctest::Approx(-2.0));
  // Gas: -g0 (K4 + K5) + S_g = -2; insulating wall: g0 K6 = 1.
  CHECK(h.source[2].eval(0.4, 0.1) == doctest::Approx(-2.0));
  CHECK(h.source[3].eval(0.4, 0.1) == doctest::Approx(1.0));

  std::array<std::vector<double>, 4> u = {
      std::vector<double>{0.5}, {0.25}, {-0.5}, {0.0}};
  const auto t = unshift(u, p);
  CHECK(t[0][0] == doctest::Approx(2.5));
  CHECK(t[1][0] == doctest::Approx(0.25));
  CHECK(t[2][0] == doctest::Approx(0.5));
  CHECK(t[3][0] == doctest::Approx(0.0));
}

TEST_CASE("inlet incompatibility is a warning, not an error") {
  auto c = base_config();
  c["T0_f"] = "1 + x";  // T0_f(0) = 1 = f_0, fine
  c["T0_g"] = "2";      // T0_g(1) = 2 != g_0 = 1
  const HomogeneousProblem h = shift_to_homogeneous(build_problem(c));
  REQUIRE(h.warnings.size() == 1);
  CHECK(h.warnings[0].find("g") != std::string::npos);
}
