#include "coaxheat/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coaxheat {

EnergyConstants derive_constants(const HomogeneousProblem& problem) {
  double kbar[6] = {0, 0, 0, 0, 0, 0};
  const int n = kValidationGridSize;
  for (int i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / (n - 1);
    for (int j = 0; j < 6; ++j)
      kbar[j] = std::max(kbar[j], problem.K[j].eval(x, 0.0));
  }
  EnergyConstants c;
  c.M1 = std::max({kbar[0], kbar[1] + kbar[2], kbar[3] + kbar[4], kbar[5]});
  c.M2 = 0.5;
  c.M3 = 0.5;
  c.C1 = 2.0 * (c.M1 + c.M2);
  c.C2 = 2.0 * c.M3;
  c.kappa = 2.0 * c.M1;
  return c;
}

EnergyReport norms(const CoefficientTrajectory& traj,
                   const GalerkinSystem& system) {
  const int m = system.m;
  if (!traj.states.empty() && traj.states.front().size() != 4 * m)
    throw std::invalid_argument("trajectory dimension does not match system");

  EnergyReport report;
  report.times = traj.times;
  const std::size_t n = traj.times.size();
  report.h2_norm_sq.resize(n);
  report.v_norm_sq.resize(n);
  report.source_norm_sq.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Eigen::VectorXd& state = traj.states[k];
    report.h2_norm_sq[k] = state.squaredNorm();
    double v = 0.0;
    for (int a = 0; a < 4; ++a) {
      const auto seg = state.segment(a * m, m);
      v += seg.dot(system.v_grams[a] * seg);
    }
    report.v_norm_sq[k] = v;
    report.source_norm_sq[k] = system.source_norm_sq(traj.times[k]);
  }
  return report;
}

double check_energy_inequality(EnergyReport& report,
                               const EnergyConstants& constants, double dt) {
  const std::size_t n = report.times.size();
  report.dissipation_residual.assign(n > 1 ? n - 1 : 0, 0.0);
  double min_residual = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double dh2 = (report.h2_norm_sq[k + 1] - report.h2_norm_sq[k]) / dt;
    const double residual = constants.C1 * report.h2_norm_sq[k + 1] +
                            constants.C2 * report.source_norm_sq[k + 1] -
                            dh2 - report.v_norm_sq[k + 1];
    report.dissipation_residual[k] = residual;
    min_residual = (k == 0) ? residual : std::min(min_residual, residual);
  }
  return min_residual;
}

double check_gronwall_bound(EnergyReport& report,
                            const EnergyConstants& constants) {
  const std::size_t n = report.times.size();
  double integral = 0.0;
  double margin = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) {
      const double dt = report.times[k] - report.times[k - 1];
      integral +=
          0.5 * dt * (report.source_norm_sq[k] + report.source_norm_sq[k - 1]);
    }
    const double bound = std::exp(constants.C1 * report.times[k]) *
                         (report.h2_norm_sq[0] + constants.C2 * integral);
    const double gap = bound - report.h2_norm_sq[k];
    margin = (k == 0) ? gap : std::min(margin, gap);
  }
  report.gronwall_margin = margin;
  return margin;
}

double check_contraction(const CoefficientTrajectory& a,
                         const CoefficientTrajectory& b,
                         const EnergyConstants& constants) {
  if (a.times.size() != b.times.size() ||
      a.states.front().size() != b.states.front().size())
    throw std::invalid_argument("contraction check: mismatched trajectories");
  const double d0 = (a.states[0] - b.states[0]).squaredNorm();
  double margin = 0.0;
  for (std::size_t k = 0; k < a.times.size(); ++k) {
    const double d = (a.states[k] - b.states[k]).squaredNorm();
    const double gap = std::exp(constants.kappa * a.times[k]) * d0 - d;
    margin = (k == 0) ? gap : std::min(margin, gap);
  }
  return margin;
}

RegularityReport regularity_report(const CoefficientTrajectory& traj,
                                   const GalerkinSystem& system,
                                   const QuadratureRule& quad) {
  const int m = system.m;
  RegularityReport rep;

  // H^2 Sobolev Grams per region: identity + first- and second-derivative
  // Grams (all derivative orders, unweighted).
  std::array<Eigen::MatrixXd, 4> sobolev;
  for (int a = 0; a < 4; ++a) {
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(m, m);
    for (int q = 0; q < quad.size(); ++q) {
      const double x = quad.nodes[q];
      const double w = quad.weights[q];
      const Eigen::VectorXd d1 = system.bases[a].eval_all(x, 1);
      const Eigen::VectorXd d2 = system.bases[a].eval_all(x, 2);
      g.noalias() += w * d1 * d1.transpose();
      g.noalias() += w * d2 * d2.transpose();
    }
    sobolev[a] = std::move(g);
  }

  double dtu_sq_integral = 0.0;
  double h2sob_sq_integral = 0.0;
  double src_sq_integral = 0.0;
  double prev_dtu = 0.0, prev_sob = 0.0, prev_src = 0.0;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const Eigen::VectorXd& state = traj.states[k];
    double v = 0.0, sob = 0.0;
    for (int a = 0; a < 4; ++a) {
      const auto seg = state.segment(a * m, m);
      v += seg.dot(system.v_grams[a] * seg);
      sob += seg.dot(sobolev[a] * seg);
    }
    rep.sup_v_norm = std::max(rep.sup_v_norm, std::sqrt(std::max(v, 0.0)));

    const double dtu =
        (system.source(traj.times[k]) - system.A * state).squaredNorm();
    const double src = system.source_norm_sq(traj.times[k]);
    if (k > 0) {
      const double dt = traj.times[k] - traj.times[k - 1];
      dtu_sq_integral += 0.5 * dt * (dtu + prev_dtu);
      h2sob_sq_integral += 0.5 * dt * (sob + prev_sob);
      src_sq_integral += 0.5 * dt * (src + prev_src);
    }
    prev_dtu = dtu;
    prev_sob = sob;
    prev_src = src;
  }
  rep.dt_u_l2 = std::sqrt(dtu_sq_integral);
  rep.h2_sobolev_l2 = std::sqrt(h2sob_sq_integral);

  double u0_v_sq = 0.0;
  for (int a = 0; a < 4; ++a) {
    const auto seg = system.alpha0.segment(a * m, m);
    u0_v_sq += seg.dot(system.v_grams[a] * seg);
  }
  rep.data_norm = std::sqrt(src_sq_integral) + std::sqrt(std::max(u0_v_sq, 0.0));
  const double lhs = rep.sup_v_norm + rep.dt_u_l2 + rep.h2_sobolev_l2;
  rep.ratio = rep.data_norm > 0.0 ? lhs / rep.data_norm : 0.0;
  return rep;
}

double weak_residual(const CoefficientTrajectory& traj,
                     const GalerkinSystem& system) {
  double worst = 0.0;
  for (std::size_t k = 0; k + 1 < traj.times.size(); ++k) {
    const double dt = traj.times[k + 1] - traj.times[k];
    const double t_mid = 0.5 * (traj.times[k] + traj.times[k + 1]);
    const Eigen::VectorXd mid = 0.5 * (traj.states[k] + traj.states[k + 1]);
    const Eigen::VectorXd res = (traj.states[k + 1] - traj.states[k]) / dt +
                                system.A * mid - system.source(t_mid);
    worst = std::max(worst, res.norm());
  }
  return worst;
}

}  // namespace coaxheat
