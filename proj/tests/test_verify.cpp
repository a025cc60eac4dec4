#include <doctest.h>

#include <cmath>

#include "coaxheat/verify.hpp"

using namespace coaxheat;

TEST_CASE("catalog lists the three shipped cases and rejects others") {
  const auto names = manufactured_catalog();
  REQUIRE(names.size() == 3);
  for (const auto& n : names) {
    const ManufacturedCase mc = build_manufactured(n);
    CHECK(mc.name == n);
  }
  CHECK_THROWS(build_manufactured("no-such-case"));
}

TEST_CASE("manufactured sources solve their PDE (independent residual)") {
  for (const auto& name : manufactured_catalog()) {
    const ManufacturedCase mc = build_manufactured(name);
    for (double x : {0.2, 0.5, 0.8})
      for (double t : {0.01, 0.05, 0.09})
        CHECK(manufactured_residual(mc, x, t, 1e-3) < 1e-8);
  }
}

TEST_CASE("exact fields obey the homogeneous boundary conditions") {
  for (const auto& name : manufactured_catalog()) {
    const ManufacturedCase mc = build_manufactured(name);
    for (double t : {0.0, 0.05}) {
      CHECK(std::abs(mc.exact[0].eval(0.0, t)) < 1e-12);  // fluid inlet
      CHECK(std::abs(mc.exact[2].eval(1.0, t)) < 1e-12);  // gas inlet
      CHECK(std::abs(mc.exact[0].diff("x").eval(1.0, t)) < 1e-10);
      CHECK(std::abs(mc.exact[2].diff("x").eval(0.0, t)) < 1e-10);
      CHECK(std::abs(mc.exact[1].diff("x").eval(0.0, t)) < 1e-10);
      CHECK(std::abs(mc.exact[1].diff("x").eval(1.0, t)) < 1e-10);
      CHECK(std::abs(mc.exact[3].diff("x").eval(0.0, t)) < 1e-10);
      CHECK(std::abs(mc.exact[3].diff("x").eval(1.0, t)) < 1e-10);
    }
  }
}

TEST_CASE("fd oracle converges at second order on the analytic case") {
  const ManufacturedCase mc = build_manufactured("decoupled-heat");
  const double dt = 1e-4, T = 0.1;
  const double e32 = fd_error_vs_exact(mc, 32, dt, T);
  const double e64 = fd_error_vs_exact(mc, 64, dt, T);
  const double e128 = fd_error_vs_exact(mc, 128, dt, T);
  CHECK(e32 / e64 == doctest::Approx(4.0).epsilon(0.15));
  CHECK(e64 / e128 == doctest::Approx(4.0).epsilon(0.15));

  // Pointwise check at the final time against the closed form.
  const SolutionField field = fd_oracle_solve(mc.problem, 128, dt, T);
  double max_err = 0.0;
  const std::size_t last = field.times.size() - 1;
  for (std::size_t i = 0; i < field.x_grid.size(); ++i) {
    const double want =
        std::exp(-M_PI * M_PI * T) * std::cos(M_PI * field.x_grid[i]);
    max_err = std::max(max_err, std::abs(field.values[1](last, i) - want));
  }
  CHECK(max_err <= 5e-4);
}

TEST_CASE("galerkin error plateaus once the exact field is in the span") {
  const ManufacturedCase mc = build_manufactured("decoupled-heat");
  const double e2 =
      galerkin_error_vs_exact(mc, 2, 1e-4, Scheme::CrankNicolson, 0.05);
  const double e8 =
      galerkin_error_vs_exact(mc, 8, 1e-4, Scheme::CrankNicolson, 0.05);
  CHECK(e2 < 1e-6);  // cos(pi x) is wall mode 2; only time error remains
  CHECK(e8 == doctest::Approx(e2).epsilon(1e-3));
}

TEST_CASE("compare_fields demands matching grids and is zero on identity") {
  const ManufacturedCase mc = build_manufactured("decoupled-heat");
  const SolutionField a = fd_oracle_solve(mc.problem, 16, 1e-3, 0.01);
  const FieldDiscrepancy self = compare_fields(a, a);
  CHECK(self.l2 == 0.0);
  CHECK(self.linf == 0.0);
  const SolutionField b = fd_oracle_solve(mc.problem, 32, 1e-3, 0.01);
  CHECK_THROWS(compare_fields(a, b));
}

TEST_CASE("galerkin and fd oracle agree on a coupled case") {
  const ManufacturedCase mc = build_manufactured("coupled-trig");
  const double rel = cross_method_discrepancy(mc, 16, 128, 5e-4, 0.05);
  CHECK(rel < 5e-3);
}

TEST_CASE("convergence studies fill rates") {
  const ManufacturedCase mc = build_manufactured("coupled-trig");
  const auto table =
      convergence_study_m(mc, {2, 4, 8}, 1e-3, Scheme::CrankNicolson, 0.05);
  REQUIRE(table.size() == 3);
  CHECK(table[1].error < table[0].error);
  CHECK(table[2].error < table[1].error);
  CHECK(table[2].rate > 1.0);
}
