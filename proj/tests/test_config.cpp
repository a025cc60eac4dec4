#include <doctest.h>

#include "coaxheat/config.hpp"

using namespace coaxheat;

namespace {

const char* kGood = R"(
# full problem block
[problem]
E_f = 1
E_s = 1
E_g = 1
E_p = "1 + 0.5*x"   ; quoted expression
K_1 = 0
K_2 = 0
K_3 = 0
K_4 = 0
K_5 = 0
K_6 = 0
S_f = 0
S_s = 0
S_g = 0
S_p = 0
T0_f = 1
T0_s = 1
T0_g = 1
T0_p = 1
f_f = 1
f_g = 1
f_0 = 1
g_0 = 1
horizon = 0.25

[discretization]
m = 12
dt = 5e-4
scheme = backward-euler

[run]
sign_convention = paper-block
margin_tol = 1e-7
)";

}  // namespace

TEST_CASE("a complete config parses with sections applied") {
  const RunConfig cfg = parse_config_text(kGood);
  CHECK(cfg.m == 12);
  CHECK(cfg.dt == 5e-4);
  CHECK(cfg.scheme == Scheme::BackwardEuler);
  CHECK(cfg.sign == SignConvention::PaperBlock);
  CHECK(cfg.margin_tol == 1e-7);
  CHECK(cfg.problem.at("E_p") == "1 + 0.5*x");
  CHECK(cfg.problem.at("horizon") == "0.25");
}

TEST_CASE("unknown keys, sections and duplicates are errors with location") {
  CHECK_THROWS_WITH_AS(parse_config_text("[problem]\nE_q = 1\n"),
                       doctest::Contains("E_q"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text("[weird]\n"),
                       doctest::Contains("weird"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text("[problem]\nE_f = 1\nE_f = 2\n"),
                       doctest::Contains("duplicate"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text("E_f = 1\n"),
                       doctest::Contains("section"), ConfigError);
  try {
    parse_config_text("[problem]\nbogus = 1\n", "file.ini");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("file.ini:2") != std::string::npos);
  }
}

TEST_CASE("value validation") {
  CHECK_THROWS_AS(parse_config_text("[discretization]\nm = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("[discretization]\nm = 500\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config_text("[discretization]\ndt = -1\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config_text("[discretization]\ndt = abc\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config_text("[discretization]\nscheme = rk4\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config_text("[run]\nsign_convention = upside\n"),
                  ConfigError);
}

TEST_CASE("defaults survive an empty discretization section") {
  const RunConfig cfg = parse_config_text("[discretization]\n");
  CHECK(cfg.m == 8);
  CHECK(cfg.dt == 1e-3);
  CHECK(cfg.scheme == Scheme::CrankNicolson);
  CHECK(cfg.sign == SignConvention::Eq9);
}
