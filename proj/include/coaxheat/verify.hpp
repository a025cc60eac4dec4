#pragma once

#include <string>
#include <vector>

#include "coaxheat/estimates.hpp"
#include "coaxheat/integrate.hpp"

namespace coaxheat {

/// Exact analytic fields plus a problem whose source has been overridden so
/// the fields solve it exactly. Shipped ids: "decoupled-heat",
/// "coupled-trig", "variable-E".
struct ManufacturedCase {
  std::string name;
  std::array<expr::Expr, 4> exact;  // U_a(x,t), homogeneous-boundary fields
  HomogeneousProblem problem;
};

ManufacturedCase build_manufactured(const std::string& id);

std::vector<std::string> manufactured_catalog();

/// Residual of the shifted system at one point, computed with central finite
/// differences of the exact fields (independent of the symbolic pipeline
/// that built the source). Returns the max over the four components.
/// The default step balances truncation against roundoff for the
/// fourth-order second-derivative stencil.
double manufactured_residual(const ManufacturedCase& mc, double x, double t,
                             double h = 1e-3);

/// Method-of-lines reference on n+1 uniform nodes: conservative
/// second-order diffusion stencil, central convection with ghost-point
/// reflection at zero-flux ends, Dirichlet rows pinned, Crank-Nicolson in
/// time. A cell-Peclet warning is recorded in the field's notes.
SolutionField fd_oracle_solve(const HomogeneousProblem& problem, int n,
                              double dt, double T);

struct FieldDiscrepancy {
  double l2 = 0.0;    // space-time L2, trapezoid in both axes, all regions
  double linf = 0.0;  // global max-abs
};

/// Requires identical grids and time lists.
FieldDiscrepancy compare_fields(const SolutionField& a,
                                const SolutionField& b);

struct ConvergenceRow {
  double param = 0.0;  // m or dt
  double error = 0.0;  // space-time L2 vs the exact fields
  double rate = 0.0;   // log2(e_prev / e_this); 0 for the first row
};

/// Space-time L2 error of the Galerkin solution against the case's exact
/// fields, on nx+1 spatial points and at most max_time_samples time slices.
double galerkin_error_vs_exact(const ManufacturedCase& mc, int m, double dt,
                               Scheme scheme, double T, int nx = 128,
                               int max_time_samples = 101);

/// Space-time L2 error of the finite-difference oracle against the exact
/// fields (self-convergence instrument for the oracle).
double fd_error_vs_exact(const ManufacturedCase& mc, int n, double dt,
                         double T, int max_time_samples = 101);

std::vector<ConvergenceRow> convergence_study_m(const ManufacturedCase& mc,
                                                const std::vector<int>& m_list,
                                                double dt, Scheme scheme,
                                                double T);

std::vector<ConvergenceRow> convergence_study_dt(
    const ManufacturedCase& mc, int m, const std::vector<double>& dt_list,
    Scheme scheme, double T);

/// Relative space-time L2 discrepancy between the Galerkin solution
/// (m modes) and the finite-difference oracle (n intervals), both at the
/// given step size, evaluated on the oracle grid.
double cross_method_discrepancy(const ManufacturedCase& mc, int m, int n,
                                double dt, double T);

}  // namespace coaxheat
