#include <doctest.h>

#include <cmath>

#include "coaxheat/estimates.hpp"
#include "coaxheat/model.hpp"

using namespace coaxheat;

namespace {

std::map<std::string, std::string> config(const std::string& k) {
  std::map<std::string, std::string> c;
  for (const char* r : {"f", "s", "g", "p"}) {
    c[std::string("E_") + r] = "1";
    c[std::string("S_") + r] = "0";
    c[std::string("T0_") + r] = "1";
  }
  c["T0_f"] = "2";
  c["f_0"] = "2";
  for (int j = 1; j <= 6; ++j) c["K_" + std::to_string(j)] = k;
  c["f_f"] = "1";
  c["f_g"] = "1";
  c["g_0"] = "1";
  c["horizon"] = "0.5";
  return c;
}

}  // namespace

TEST_CASE("constants for unit exchange rates") {
  const HomogeneousProblem p =
      shift_to_homogeneous(build_problem(config("1")));
  const EnergyConstants c = derive_constants(p);
  CHECK(c.beta_f == 1.0);
  CHECK(c.gamma_f == 0.0);
  CHECK(c.M1 == doctest::Approx(2.0));       // max(1, 1+1, 1+1, 1)
  CHECK(c.M2 == 0.5);
  CHECK(c.M3 == 0.5);
  CHECK(c.C1 == doctest::Approx(5.0));       // 2 (M1 + M2)
  CHECK(c.C2 == doctest::Approx(1.0));       // 2 M3
  CHECK(c.kappa == doctest::Approx(4.0));    // 2 M1
}

TEST_CASE("constants take the sup of variable rates") {
  const HomogeneousProblem p =
      shift_to_homogeneous(build_problem(config("1 + x")));
  const EnergyConstants c = derive_constants(p);
  CHECK(c.M1 == doctest::Approx(4.0));  // sup(K2) + sup(K3) = 2 + 2
  CHECK(c.kappa == doctest::Approx(8.0));
}

TEST_CASE("norm series and the discrete energy inequality") {
  const HomogeneousProblem p =
      shift_to_homogeneous(build_problem(config("1")));
  const int m = 8;
  const double dt = 1e-3;
  const GalerkinSystem sys = assemble_system(p, m, reference_rule(m));
  const CoefficientTrajectory traj =
      solve_trajectory(sys, p.horizon, dt, Scheme::BackwardEuler);
  const EnergyConstants c = derive_constants(p);

  EnergyReport report = norms(traj, sys);
  REQUIRE(report.times.size() == traj.times.size());
  // The H2 norm squared of the state is exactly |alpha|^2 (orthonormality).
  for (std::size_t k = 0; k < report.times.size(); k += 100)
    CHECK(report.h2_norm_sq[k] ==
          doctest::Approx(traj.states[k].squaredNorm()).epsilon(1e-12));

  const double margin = check_energy_inequality(report, c, dt);
  CHECK(margin >= -1e-8 * (1.0 + report.h2_norm_sq[0]));
  CHECK(report.dissipation_residual.size() == report.times.size() - 1);

  const double gmargin = check_gronwall_bound(report, c);
  CHECK(gmargin >= 0.0);
  CHECK(report.gronwall_margin == gmargin);
}

TEST_CASE("contraction of two trajectories and exact-zero for equal data") {
  const HomogeneousProblem p =
      shift_to_homogeneous(build_problem(config("1")));
  const int m = 6;
  const GalerkinSystem sys = assemble_system(p, m, reference_rule(m));
  const EnergyConstants c = derive_constants(p);
  const CoefficientTrajectory a =
      solve_trajectory(sys, 0.2, 1e-3, Scheme::BackwardEuler);

  GalerkinSystem perturbed = sys;
  perturbed.alpha0(2) += 1e-3;
  const CoefficientTrajectory b =
      solve_trajectory(perturbed, 0.2, 1e-3, Scheme::BackwardEuler);

  CHECK(check_contraction(a, b, c) >= -1e-10 * 1e-6);
  CHECK(check_contraction(a, a, c) == 0.0);
  for (std::size_t k = 0; k < a.states.size(); ++k)
    CHECK((a.states[k] -
           solve_trajectory(sys, 0.2, 1e-3, Scheme::BackwardEuler).states[k])
              .norm() == 0.0);
}

TEST_CASE("weak residual vanishes for crank-nicolson and is O(dt) for BE") {
  const HomogeneousProblem p =
      shift_to_homogeneous(build_problem(config("1")));
  const GalerkinSystem sys = assemble_system(p, 6, reference_rule(6));
  const CoefficientTrajectory cn =
      solve_trajectory(sys, 0.1, 1e-3, Scheme::CrankNicolson);
  const CoefficientTrajectory be =
      solve_trajectory(sys, 0.1, 1e-3, Scheme::BackwardEuler);
  CHECK(weak_residual(cn, sys) < 1e-10);
  CHECK(weak_residual(be, sys) > 1e-6);
}

TEST_CASE("regularity report is finite and scales with the data") {
  const HomogeneousProblem p =
      shift_to_homogeneous(build_problem(config("1")));
  const int m = 12;
  const QuadratureRule quad = reference_rule(m);
  const GalerkinSystem sys = assemble_system(p, m, quad);
  const CoefficientTrajectory traj =
      solve_trajectory(sys, p.horizon, 1e-3, Scheme::CrankNicolson);
  const RegularityReport r = regularity_report(traj, sys, quad);
  CHECK(r.data_norm > 0.0);
  CHECK(r.sup_v_norm > 0.0);
  CHECK(std::isfinite(r.dt_u_l2));
  CHECK(std::isfinite(r.h2_sobolev_l2));
  CHECK(r.ratio == doctest::Approx((r.sup_v_norm + r.dt_u_l2 +
                                    r.h2_sobolev_l2) /
                                   r.data_norm));
}
