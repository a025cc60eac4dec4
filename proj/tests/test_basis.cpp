#include <doctest.h>

#include <cmath>

#include "coaxheat/basis.hpp"

using namespace coaxheat;

TEST_CASE("families are orthonormal under the reference rule") {
  for (Region r : kRegions)
    for (int m : {1, 2, 4, 8, 16, 32}) {
      const BasisFamily fam = build_basis(r, m);
      CHECK(check_orthonormality(fam, reference_rule(m)) < 1e-10);
    }
}

TEST_CASE("a deliberately coarse rule breaks orthonormality") {
  const BasisFamily fam = build_basis(Region::F, 16);
  CHECK(check_orthonormality(fam, gauss_rule(4)) > 1e-2);
}

TEST_CASE("essential and natural boundary values") {
  const int m = 6;
  const BasisFamily f = build_basis(Region::F, m);
  const BasisFamily g = build_basis(Region::G, m);
  const BasisFamily s = build_basis(Region::S, m);
  for (int i = 1; i <= m; ++i) {
    CHECK(f.eval(i, 0.0) == doctest::Approx(0.0));          // inlet Dirichlet
    CHECK(f.eval(i, 1.0, 1) == doctest::Approx(0.0));       // zero flux
    CHECK(g.eval(i, 1.0) == doctest::Approx(0.0));
    CHECK(g.eval(i, 0.0, 1) == doctest::Approx(0.0));
    CHECK(s.eval(i, 0.0, 1) == doctest::Approx(0.0));       // wall Neumann
    CHECK(s.eval(i, 1.0, 1) == doctest::Approx(0.0));
  }
}

TEST_CASE("analytic derivatives match finite differences") {
  const double h = 1e-5;
  for (Region r : kRegions) {
    const BasisFamily fam = build_basis(r, 5);
    for (int i = 1; i <= 5; ++i)
      for (double x : {0.13, 0.42, 0.77}) {
        const double d1 = (fam.eval(i, x + h) - fam.eval(i, x - h)) / (2 * h);
        const double d2 =
            (fam.eval(i, x + h) - 2 * fam.eval(i, x) + fam.eval(i, x - h)) /
            (h * h);
        CHECK(fam.eval(i, x, 1) == doctest::Approx(d1).epsilon(1e-8));
        CHECK(fam.eval(i, x, 2) ==
              doctest::Approx(d2).epsilon(1e-4).scale(1.0 + std::abs(d2)));
      }
  }
}

TEST_CASE("cross gram of a family with itself and K = 1 is the identity") {
  const BasisFamily s = build_basis(Region::S, 8);
  const QuadratureRule quad = reference_rule(8);
  const CrossGram cg = cross_gram(s, s, [](double) { return 1.0; }, quad);
  CHECK((cg.entries - Eigen::MatrixXd::Identity(8, 8)).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("fluid-wall cross gram against a closed form") {
  // <psi_1^f, psi_1^s> = integral of sqrt(2) sin(pi x / 2) = 2 sqrt(2) / pi.
  const BasisFamily f = build_basis(Region::F, 2);
  const BasisFamily s = build_basis(Region::S, 2);
  const QuadratureRule quad = reference_rule(4);
  const CrossGram cg = cross_gram(f, s, [](double) { return 1.0; }, quad);
  CHECK(cg.entries(0, 0) == doctest::Approx(2.0 * std::sqrt(2.0) / M_PI));
}

TEST_CASE("truncated change-of-basis converges to the direct block") {
  const int m = 4;
  const BasisFamily f = build_basis(Region::F, m);
  const BasisFamily s = build_basis(Region::S, m);
  auto weight = [](double x) { return 1.0 + 0.5 * std::sin(M_PI * x); };
  const QuadratureRule quad = reference_rule(8 * m);
  const Eigen::MatrixXd direct = cross_gram(f, s, weight, quad).entries;

  double prev = std::numeric_limits<double>::infinity();
  for (int level : {m, 2 * m, 4 * m}) {
    const Eigen::MatrixXd approx =
        truncated_coupling_block(f, s, weight, level, quad);
    const double err = (approx - direct).cwiseAbs().maxCoeff();
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-2);
}
