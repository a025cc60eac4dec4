#pragma once

#include <vector>

#include "coaxheat/assembly.hpp"
#include "coaxheat/integrate.hpp"

namespace coaxheat {

/// Explicit values for the constants of the energy, uniqueness and
/// regularity estimates, derived from sup-norms of the exchange rates.
/// With Kbar_j = sup K_j:
///   M1 = max(Kbar_1, Kbar_2+Kbar_3, Kbar_4+Kbar_5, Kbar_6),
///   M2 = M3 = 1/2 (Young split),
///   C1 = 2 (M1 + M2),  C2 = 2 M3,  kappa = 2 M1.
/// The convective boundary identities give beta_f = beta_g = 1 and
/// gamma_f = gamma_g = 0.
struct EnergyConstants {
  double beta_f = 1.0, beta_g = 1.0;
  double gamma_f = 0.0, gamma_g = 0.0;
  double M1 = 0.0, M2 = 0.5, M3 = 0.5;
  double C1 = 1.0, C2 = 1.0;
  double kappa = 0.0;
};

/// Per-step norm and inequality series for a trajectory.
struct EnergyReport {
  std::vector<double> times;
  std::vector<double> h2_norm_sq;      // squared H2 norm = |alpha|^2
  std::vector<double> v_norm_sq;       // sum of V_a quadratic forms
  std::vector<double> source_norm_sq;  // squared H2 norm of the source
  std::vector<double> dissipation_residual;  // energy-inequality slack per step
  double gronwall_margin = 0.0;
  double weak_residual = 0.0;
};

/// Norms sup_t |U|_V, |dU/dt|_{L2(0,T;H2)} and |U|_{L2(0,T;(H^2)^4)} plus
/// the regularity right-hand side and the empirical constant ratio.
struct RegularityReport {
  double sup_v_norm = 0.0;
  double dt_u_l2 = 0.0;
  double h2_sobolev_l2 = 0.0;
  double data_norm = 0.0;   // |S|_{L2(0,T;H2)} + |U0|_V
  double ratio = 0.0;       // (sum of the three norms) / data_norm
};

EnergyConstants derive_constants(const HomogeneousProblem& problem);

/// Fill times and the three norm series of the report.
EnergyReport norms(const CoefficientTrajectory& traj,
                   const GalerkinSystem& system);

/// Discrete energy inequality: at each step the slack
///   C1 h2 + C2 src - (backward-difference of h2 + v_norm)
/// evaluated at t_{n+1}. Fills report.dissipation_residual and returns the
/// minimum (>= 0 up to rounding for dissipative steps).
double check_energy_inequality(EnergyReport& report,
                               const EnergyConstants& constants, double dt);

/// Gronwall envelope bound(t) = e^{C1 t} (h2(0) + C2 int_0^t src), with the
/// integral by trapezoid. Returns min over t of bound - h2 (stored in the
/// report as gronwall_margin).
double check_gronwall_bound(EnergyReport& report,
                            const EnergyConstants& constants);

/// Two-trajectory contraction: min over t of e^{kappa t} d(0) - d(t) where
/// d(t) is the squared distance of the coefficient states.
double check_contraction(const CoefficientTrajectory& a,
                         const CoefficientTrajectory& b,
                         const EnergyConstants& constants);

RegularityReport regularity_report(const CoefficientTrajectory& traj,
                                   const GalerkinSystem& system,
                                   const QuadratureRule& quad);

/// Midpoint-stencil residual of the coefficient ODE:
/// max over steps of |(a_{n+1}-a_n)/dt + A (a_n+a_{n+1})/2 - S(t_{n+1/2})|.
double weak_residual(const CoefficientTrajectory& traj,
                     const GalerkinSystem& system);

}  // namespace coaxheat
