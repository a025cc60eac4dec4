#pragma once

#include <Eigen/Core>
#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "coaxheat/assembly.hpp"

namespace coaxheat {

enum class Scheme { BackwardEuler, CrankNicolson, Exponential };

Scheme scheme_from_name(const std::string& name);
const char* scheme_name(Scheme s);

/// Time series of the stacked Galerkin coefficient vector
/// (f^m, s^m, g^m, p^m) on a uniform grid 0 = t_0 < ... < t_N = T.
struct CoefficientTrajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  Scheme scheme = Scheme::CrankNicolson;
  double dt = 0.0;

  int steps() const { return static_cast<int>(times.size()) - 1; }
};

/// Reconstructed space-time temperature fields, one (time x space) array
/// per region.
struct SolutionField {
  std::vector<double> x_grid;
  std::vector<double> times;
  std::array<Eigen::MatrixXd, 4> values;  // values[a](n, k) at (t_n, x_k)
  std::vector<std::string> notes;         // diagnostics, e.g. cell-Peclet
};

class IntegrateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integrate d(alpha)/dt + A alpha = S(t) over [0,T] with fixed step dt.
/// Backward Euler: (I + dt A) a_{n+1} = a_n + dt S(t_{n+1}).
/// Crank-Nicolson: (I + dt/2 A) a_{n+1} = (I - dt/2 A) a_n + dt S(t_{n+1/2}).
/// Exponential:    a_{n+1} = exp(-dt A) a_n + variation-of-constants term
///                 with 4-node Gauss quadrature per step (near-exact
///                 reference since A is constant).
/// The step matrix is factorized once. Throws IntegrateError on a singular
/// step matrix or if a state goes non-finite (reported with its step).
CoefficientTrajectory solve_trajectory(const GalerkinSystem& system, double T,
                                       double dt, Scheme scheme);

/// Evaluate the modal ansatz per region at every (t, x); optionally add the
/// inlet lift (f0, 0, g0, 0) to recover temperatures.
SolutionField reconstruct(const CoefficientTrajectory& traj,
                          const GalerkinSystem& system,
                          const std::vector<double>& x_grid,
                          bool unshift = false, double f0 = 0.0,
                          double g0 = 0.0);

/// Uniform grid of n+1 points on [0,1].
std::vector<double> uniform_grid(int n);

}  // namespace coaxheat
