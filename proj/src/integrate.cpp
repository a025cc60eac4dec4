#include "coaxheat/integrate.hpp"

#include <Eigen/LU>
#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

namespace coaxheat {

Scheme scheme_from_name(const std::string& name) {
  if (name == "backward-euler") return Scheme::BackwardEuler;
  if (name == "crank-nicolson") return Scheme::CrankNicolson;
  if (name == "exponential") return Scheme::Exponential;
  throw IntegrateError("unknown scheme '" + name +
                       "' (expected backward-euler, crank-nicolson or "
                       "exponential)");
}

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::BackwardEuler: return "backward-euler";
    case Scheme::CrankNicolson: return "crank-nicolson";
    case Scheme::Exponential: return "exponential";
  }
  return "?";
}

namespace {

void check_finite(const Eigen::VectorXd& v, int step) {
  if (!v.allFinite())
    throw IntegrateError("non-finite state at step " + std::to_string(step));
}

}  // namespace

CoefficientTrajectory solve_trajectory(const GalerkinSystem& system, double T,
                                       double dt, Scheme scheme) {
  if (dt <= 0.0) throw IntegrateError("dt must be positive");
  if (T < dt) throw IntegrateError("horizon shorter than one step");
  const int n_steps = static_cast<int>(std::llround(T / dt));
  const auto dim = system.A.rows();

  CoefficientTrajectory traj;
  traj.scheme = scheme;
  traj.dt = dt;
  traj.times.reserve(n_steps + 1);
  traj.states.reserve(n_steps + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(system.alpha0);

  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(dim, dim);

  switch (scheme) {
    case Scheme::BackwardEuler: {
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(identity + dt * system.A);
      if (std::fabs(lu.determinant()) == 0.0)
        throw IntegrateError("singular step matrix (dt = " + std::to_string(dt) + ")");
      for (int n = 0; n < n_steps; ++n) {
        const double t_next = (n + 1) * dt;
        Eigen::VectorXd next =
            lu.solve(traj.states.back() + dt * system.source(t_next));
        check_finite(next, n + 1);
        traj.times.push_back(t_next);
        traj.states.push_back(std::move(next));
      }
      break;
    }
    case Scheme::CrankNicolson: {
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(identity + 0.5 * dt * system.A);
      if (std::fabs(lu.determinant()) == 0.0)
        throw IntegrateError("singular step matrix (dt = " + std::to_string(dt) + ")");
      const Eigen::MatrixXd rhs_mat = identity - 0.5 * dt * system.A;
      for (int n = 0; n < n_steps; ++n) {
        const double t_mid = (n + 0.5) * dt;
        Eigen::VectorXd next = lu.solve(rhs_mat * traj.states.back() +
                                        dt * system.source(t_mid));
        check_finite(next, n + 1);
        traj.times.push_back((n + 1) * dt);
        traj.states.push_back(std::move(next));
      }
      break;
    }
    case Scheme::Exponential: {
      // a_{n+1} = E a_n + sum_q w_q dt exp(-(dt - s_q) A) S(t_n + s_q)
      // with a 4-node Gauss rule on (0, dt).
      const Eigen::MatrixXd propagator = (-dt * system.A).exp();
      const QuadratureRule sub = gauss_rule(4);
      std::array<Eigen::MatrixXd, 4> kernels;
      std::array<double, 4> offsets, weights;
      for (int q = 0; q < 4; ++q) {
        offsets[q] = sub.nodes[q] * dt;
        weights[q] = sub.weights[q] * dt;
        kernels[q] = (-(dt - offsets[q]) * system.A).exp();
      }
      for (int n = 0; n < n_steps; ++n) {
        const double t_n = n * dt;
        Eigen::VectorXd next = propagator * traj.states.back();
        for (int q = 0; q < 4; ++q)
          next.noalias() += weights[q] * (kernels[q] * system.source(t_n + offsets[q]));
        check_finite(next, n + 1);
        traj.times.push_back((n + 1) * dt);
        traj.states.push_back(std::move(next));
      }
      break;
    }
  }
  return traj;
}

SolutionField reconstruct(const CoefficientTrajectory& traj,
                          const GalerkinSystem& system,
                          const std::vector<double>& x_grid, bool unshift,
                          double f0, double g0) {
  SolutionField field;
  field.x_grid = x_grid;
  field.times = traj.times;
  const int n_times = static_cast<int>(traj.times.size());
  const int n_x = static_cast<int>(x_grid.size());
  const int m = system.m;
  const double lift[4] = {f0, 0.0, g0, 0.0};

  for (int a = 0; a < 4; ++a) {
    // Basis values at the grid once, then one GEMM over all times.
    Eigen::MatrixXd phi(m, n_x);
    for (int k = 0; k < n_x; ++k)
      phi.col(k) = system.bases[a].eval_all(x_grid[k]);
    Eigen::MatrixXd vals(n_times, n_x);
    for (int n = 0; n < n_times; ++n)
      vals.row(n) = traj.states[n].segment(a * m, m).transpose() * phi;
    if (unshift && lift[a] != 0.0) vals.array() += lift[a];
    field.values[a] = std::move(vals);
  }
  return field;
}

std::vector<double> uniform_grid(int n) {
  std::vector<double> g(n + 1);
  for (int i = 0; i <= n; ++i) g[i] = static_cast<double>(i) / n;
  return g;
}

}  // namespace coaxheat
