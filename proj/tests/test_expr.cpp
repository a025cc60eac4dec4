#include <doctest.h>

#include <cmath>
#include <random>

#include "coaxheat/expr.hpp"

using coaxheat::expr::EvalError;
using coaxheat::expr::Expr;
using coaxheat::expr::ParseError;

namespace {

// Central-difference derivative accurate to O(h^4).
double central_diff(const Expr& e, const std::string& var, double x, double t,
                    double h = 1e-4) {
  auto at = [&](double s) {
    return var == "x" ? e.eval(x + s, t) : e.eval(x, t + s);
  };
  return (8.0 * (at(h) - at(-h)) - (at(2 * h) - at(-2 * h))) / (12.0 * h);
}

const std::vector<std::string> kCorpus = {
    "1 + 2*x - t^2",
    "sin(pi*x) * exp(-t)",
    "cos(pi*(1-x)/2)",
    "sqrt(1 + x^2)",
    "tanh(3*x - t)",
    "x^3 - 2*x^2 + x/4",
    "exp(-t) * (1 + 0.5*x*(1-x))",
    "log(2 + x)",
    "1 / (1 + x^2)",
    "2^x",
    "sin(cos(x) + t)",
    "(1 + x)^(1 + t)",
};

}  // namespace

TEST_CASE("parser handles precedence, unary minus and constants") {
  CHECK(Expr::parse("1 + 2*3").eval(0, 0) == doctest::Approx(7.0));
  CHECK(Expr::parse("(1 + 2)*3").eval(0, 0) == doctest::Approx(9.0));
  CHECK(Expr::parse("-2^2").eval(0, 0) == doctest::Approx(-4.0));
  CHECK(Expr::parse("2^3^2").eval(0, 0) == doctest::Approx(512.0));
  CHECK(Expr::parse("pi").eval(0, 0) == doctest::Approx(M_PI));
  CHECK(Expr::parse("e").eval(0, 0) == doctest::Approx(std::exp(1.0)));
  CHECK(Expr::parse("sgn(-3)").eval(0, 0) == doctest::Approx(-1.0));
  CHECK(Expr::parse("abs(-3)").eval(0, 0) == doctest::Approx(3.0));
}

TEST_CASE("parse errors carry a byte offset") {
  try {
    Expr::parse("1 + * 2");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
  }
  CHECK_THROWS_AS(Expr::parse("sin(x"), ParseError);
  CHECK_THROWS_AS(Expr::parse("1 + y"), ParseError);
  CHECK_THROWS_AS(Expr::parse(""), ParseError);
  CHECK_THROWS_AS(Expr::parse("1 2"), ParseError);
}

TEST_CASE("evaluation domain errors") {
  CHECK_THROWS_AS(Expr::parse("1/x").eval(0.0, 0.0), EvalError);
  CHECK_THROWS_AS(Expr::parse("sqrt(x - 1)").eval(0.0, 0.0), EvalError);
  CHECK_THROWS_AS(Expr::parse("log(x)").eval(0.0, 0.0), EvalError);
  CHECK_THROWS_AS(Expr::parse("(x - 2)^(1/2)").eval(0.0, 0.0), EvalError);
  CHECK(Expr::parse("(x - 2)^2").eval(0.0, 0.0) == doctest::Approx(4.0));
}

TEST_CASE("symbolic derivatives match central differences on the corpus") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> ux(0.05, 0.95), ut(0.05, 0.95);
  for (const auto& src : kCorpus) {
    const Expr e = Expr::parse(src);
    const Expr dx = e.diff("x");
    const Expr dt = e.diff("t");
    for (int k = 0; k < 100; ++k) {
      const double x = ux(rng), t = ut(rng);
      const double scale_x = 1.0 + std::abs(central_diff(e, "x", x, t));
      const double scale_t = 1.0 + std::abs(central_diff(e, "t", x, t));
      CHECK(std::abs(dx.eval(x, t) - central_diff(e, "x", x, t)) / scale_x <
            1e-6);
      CHECK(std::abs(dt.eval(x, t) - central_diff(e, "t", x, t)) / scale_t <
            1e-6);
    }
  }
}

TEST_CASE("printing round-trips through the parser") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (const auto& src : kCorpus) {
    const Expr e = Expr::parse(src);
    const Expr back = Expr::parse(e.str());
    for (int k = 0; k < 20; ++k) {
      const double x = u(rng), t = u(rng);
      CHECK(back.eval(x, t) == doctest::Approx(e.eval(x, t)).epsilon(1e-12));
    }
  }
}

TEST_CASE("depends_on sees through the tree") {
  CHECK(Expr::parse("sin(pi*x)").depends_on("x"));
  CHECK_FALSE(Expr::parse("sin(pi*x)").depends_on("t"));
  CHECK(Expr::parse("exp(-t)*x").depends_on("t"));
  CHECK_FALSE(Expr::parse("1 + pi").depends_on("x"));
}

TEST_CASE("operator algebra builds correct trees") {
  const Expr x = Expr::variable("x");
  const Expr t = Expr::variable("t");
  const Expr e = sin(x * t) + exp(-t) / (Expr::constant(1.0) + x * x);
  const double xv = 0.3, tv = 0.7;
  CHECK(e.eval(xv, tv) ==
        doctest::Approx(std::sin(xv * tv) +
                        std::exp(-tv) / (1.0 + xv * xv)));
  const Expr d = e.diff("x");
  CHECK(d.eval(xv, tv) == doctest::Approx(central_diff(e, "x", xv, tv)));
}
