#include <doctest.h>

#include <cmath>

#include "coaxheat/quadrature.hpp"

using coaxheat::gauss_rule;
using coaxheat::QuadratureRule;
using coaxheat::reference_rule;

TEST_CASE("gauss rules integrate polynomials of degree 2n-1 exactly") {
  for (int n : {1, 2, 4, 8, 16}) {
    const QuadratureRule rule = gauss_rule(n);
    for (int d = 0; d <= 2 * n - 1; ++d) {
      const double got = rule.integrate([d](double x) { return std::pow(x, d); });
      CHECK(got == doctest::Approx(1.0 / (d + 1)).epsilon(1e-13));
    }
    // One degree beyond exactness must visibly miss for the smallest rules.
    if (n <= 2) {
      const double over =
          rule.integrate([n](double x) { return std::pow(x, 2 * n); });
      CHECK(std::abs(over - 1.0 / (2 * n + 1)) > 1e-6);
    }
  }
}

TEST_CASE("nodes are interior and weights are positive and sum to one") {
  for (int n : {1, 3, 7, 32, 64}) {
    const QuadratureRule rule = gauss_rule(n);
    REQUIRE(rule.size() == n);
    CHECK(rule.weights.sum() == doctest::Approx(1.0).epsilon(1e-14));
    for (int q = 0; q < n; ++q) {
      CHECK(rule.nodes[q] > 0.0);
      CHECK(rule.nodes[q] < 1.0);
      CHECK(rule.weights[q] > 0.0);
      if (q > 0) CHECK(rule.nodes[q] > rule.nodes[q - 1]);
    }
  }
}

TEST_CASE("oscillatory integrals at the reference rule size") {
  // The reference rule for m = 32 must resolve products of the highest
  // basis modes, frequency about 32 pi each.
  const QuadratureRule rule = reference_rule(32);
  const double w = 31.5 * M_PI;
  const double got = rule.integrate([w](double x) {
    return 2.0 * std::sin(w * x) * std::sin(w * x);
  });
  CHECK(got == doctest::Approx(1.0 - std::sin(2 * w) / (2 * w)).epsilon(1e-12));
}

TEST_CASE("reference rule grows with m") {
  CHECK(reference_rule(1).size() >= 64);
  CHECK(reference_rule(64).size() >= 2 * 64 + 16);
}
