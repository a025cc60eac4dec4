// Command-line driver: solve / energy / contract / verify subcommands over
// INI problem configs, emitting CSV and JSON artifacts.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "coaxheat/config.hpp"
#include "coaxheat/csv.hpp"
#include "coaxheat/estimates.hpp"
#include "coaxheat/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace coaxheat;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitMarginFailure = 2;

struct SolveArtifacts {
  ProblemSpec spec;
  HomogeneousProblem problem;
  GalerkinSystem system;
  CoefficientTrajectory traj;
  EnergyConstants constants;
  EnergyReport report;
  double energy_margin = 0.0;
  double gronwall_margin = 0.0;
  bool margins_ok = true;
};

QuadratureRule rule_for(const RunConfig& cfg) {
  return cfg.quad_nodes > 0 ? gauss_rule(cfg.quad_nodes)
                            : reference_rule(cfg.m);
}

SolveArtifacts run_pipeline(const RunConfig& cfg) {
  SolveArtifacts art;
  art.spec = build_problem(cfg.problem);
  art.problem = shift_to_homogeneous(art.spec);
  for (const auto& w : art.problem.warnings)
    std::cerr << "warning: " << w << "\n";

  const QuadratureRule quad = rule_for(cfg);
  art.system = assemble_system(art.problem, cfg.m, quad, cfg.sign);
  art.traj =
      solve_trajectory(art.system, art.spec.horizon, cfg.dt, cfg.scheme);
  art.constants = derive_constants(art.problem);
  art.report = norms(art.traj, art.system);
  art.energy_margin =
      check_energy_inequality(art.report, art.constants, cfg.dt);
  art.gronwall_margin = check_gronwall_bound(art.report, art.constants);
  art.report.weak_residual = weak_residual(art.traj, art.system);

  double max_h2 = 0.0;
  for (double v : art.report.h2_norm_sq) max_h2 = std::max(max_h2, v);
  const double scale = 1.0 + max_h2;
  art.margins_ok = art.energy_margin >= -cfg.margin_tol * scale &&
                   art.gronwall_margin >= -cfg.margin_tol * scale;
  return art;
}

json constants_json(const EnergyConstants& c) {
  return json{{"beta_f", c.beta_f},   {"beta_g", c.beta_g},
              {"gamma_f", c.gamma_f}, {"gamma_g", c.gamma_g},
              {"M1", c.M1},           {"M2", c.M2},
              {"M3", c.M3},           {"C1", c.C1},
              {"C2", c.C2},           {"kappa", c.kappa}};
}

void write_summary(const fs::path& path, const json& j) {
  std::ofstream out(path);
  out << j.dump(2) << "\n";
}

void write_energy_csv(const fs::path& path, const EnergyReport& r) {
  CsvWriter csv(path.string(), {"t", "h2_norm_sq", "v_norm_sq",
                                "source_norm_sq", "dissipation_residual"});
  for (std::size_t k = 0; k < r.times.size(); ++k)
    csv.row({r.times[k], r.h2_norm_sq[k], r.v_norm_sq[k], r.source_norm_sq[k],
             k > 0 ? r.dissipation_residual[k - 1] : 0.0});
}

json base_summary(const RunConfig& cfg, const SolveArtifacts& art) {
  json j;
  j["constants"] = constants_json(art.constants);
  j["margins"] = {{"energy_min_residual", art.energy_margin},
                  {"gronwall_margin", art.gronwall_margin},
                  {"weak_residual", art.report.weak_residual}};
  j["pass"] = art.margins_ok;
  j["m"] = cfg.m;
  j["dt"] = cfg.dt;
  j["scheme"] = scheme_name(cfg.scheme);
  j["warnings"] = art.problem.warnings;
  return j;
}

int cmd_solve(const std::string& config_path, const std::string& out_dir,
              bool energy_only) {
  const RunConfig cfg = load_config(config_path);
  fs::create_directories(out_dir);
  const SolveArtifacts art = run_pipeline(cfg);

  if (!energy_only) {
    const std::vector<double> grid = uniform_grid(cfg.x_points - 1);
    const SolutionField field = reconstruct(art.traj, art.system, grid, true,
                                            art.spec.f0, art.spec.g0);
    CsvWriter csv((fs::path(out_dir) / "solution.csv").string(),
                  {"t", "x", "T_f", "T_s", "T_g", "T_p"});
    for (std::size_t s = 0; s < field.times.size(); ++s)
      for (std::size_t i = 0; i < field.x_grid.size(); ++i)
        csv.row({field.times[s], field.x_grid[i], field.values[0](s, i),
                 field.values[1](s, i), field.values[2](s, i),
                 field.values[3](s, i)});
  }
  write_energy_csv(fs::path(out_dir) / "energy.csv", art.report);
  write_summary(fs::path(out_dir) / "summary.json", base_summary(cfg, art));

  return art.margins_ok ? kExitOk : kExitMarginFailure;
}

int cmd_contract(const std::string& config_path, const std::string& out_dir,
                 double eps, unsigned seed) {
  const RunConfig cfg = load_config(config_path);
  fs::create_directories(out_dir);
  const SolveArtifacts art = run_pipeline(cfg);

  GalerkinSystem perturbed = art.system;
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd delta(perturbed.alpha0.size());
  for (Eigen::Index i = 0; i < delta.size(); ++i) delta[i] = gauss(rng);
  if (eps != 0.0 && delta.norm() > 0.0) delta *= eps / delta.norm();
  if (eps == 0.0) delta.setZero();
  perturbed.alpha0 += delta;

  const CoefficientTrajectory trajB =
      solve_trajectory(perturbed, art.spec.horizon, cfg.dt, cfg.scheme);
  const double margin = check_contraction(art.traj, trajB, art.constants);

  const double d0 = delta.squaredNorm();
  CsvWriter csv((fs::path(out_dir) / "contraction.csv").string(),
                {"t", "d", "bound"});
  bool monotone = true;
  double prev_d = d0;
  for (std::size_t k = 0; k < art.traj.times.size(); ++k) {
    const double t = art.traj.times[k];
    const double d = (art.traj.states[k] - trajB.states[k]).squaredNorm();
    csv.row({t, d, std::exp(art.constants.kappa * t) * d0});
    if (d > prev_d * (1.0 + 1e-12)) monotone = false;
    prev_d = d;
  }

  const double scale = 1.0 + std::exp(art.constants.kappa * art.spec.horizon) * d0;
  const bool ok = margin >= -cfg.margin_tol * scale;

  json j = base_summary(cfg, art);
  j["contraction"] = {{"eps", eps},
                      {"d0", d0},
                      {"margin", margin},
                      {"monotone_nonincreasing", monotone},
                      {"pass", ok}};
  write_summary(fs::path(out_dir) / "summary.json", j);
  return ok ? kExitOk : kExitMarginFailure;
}

int cmd_verify(const std::string& case_id, const std::string& out_dir,
               const std::vector<int>& m_list,
               const std::vector<double>& dt_list, const std::string& scheme,
               double horizon) {
  const ManufacturedCase mc = build_manufactured(case_id);
  const Scheme sch = scheme_from_name(scheme);
  fs::create_directories(out_dir);

  bool ok = true;
  CsvWriter csv((fs::path(out_dir) / "convergence.csv").string(),
                {"param", "error", "rate"});

  if (!m_list.empty()) {
    const double dt = dt_list.empty() ? 1e-4 : dt_list.front();
    const auto table = convergence_study_m(mc, m_list, dt, sch, horizon);
    std::cout << "m-study (" << case_id << ", dt = " << dt << ")\n";
    for (std::size_t k = 0; k < table.size(); ++k) {
      csv.row({table[k].param, table[k].error, table[k].rate});
      std::cout << "  m = " << table[k].param << "  error = " << table[k].error
                << "  rate = " << table[k].rate << "\n";
      if (k > 0 && table[k].error >= table[k - 1].error) ok = false;
    }
  }
  if (dt_list.size() >= 2) {
    const int m = m_list.empty() ? 32 : m_list.back();
    const auto table = convergence_study_dt(mc, m, dt_list, sch, horizon);
    const double lo = sch == Scheme::BackwardEuler ? 0.8 : 1.8;
    const double hi = sch == Scheme::BackwardEuler ? 1.2 : 2.2;
    std::cout << "dt-study (" << case_id << ", m = " << m << ")\n";
    for (std::size_t k = 0; k < table.size(); ++k) {
      csv.row({table[k].param, table[k].error, table[k].rate});
      std::cout << "  dt = " << table[k].param
                << "  error = " << table[k].error
                << "  rate = " << table[k].rate << "\n";
      if (k > 0 && (table[k].rate < lo || table[k].rate > hi)) ok = false;
    }
  }
  std::cout << (ok ? "verify: OK" : "verify: FAILED") << "\n";
  return ok ? kExitOk : kExitMarginFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coaxial heat-exchanger spectral solver and verifier"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", case_id;
  std::string scheme = "crank-nicolson";
  std::vector<int> m_list;
  std::vector<double> dt_list;
  double eps = 1e-3, horizon = 0.1;
  unsigned seed = 1234;

  auto* solve = app.add_subcommand("solve", "solve a problem config");
  solve->add_option("config", config_path)->required();
  solve->add_option("--out", out_dir, "output directory");

  auto* energy = app.add_subcommand("energy", "energy report only");
  energy->add_option("config", config_path)->required();
  energy->add_option("--out", out_dir, "output directory");

  auto* contract =
      app.add_subcommand("contract", "two-trajectory contraction check");
  contract->add_option("config", config_path)->required();
  contract->add_option("--eps", eps, "initial perturbation size");
  contract->add_option("--seed", seed, "perturbation RNG seed");
  contract->add_option("--out", out_dir, "output directory");

  auto* verify =
      app.add_subcommand("verify", "manufactured-solution convergence study");
  verify->add_option("case", case_id, "decoupled-heat | coupled-trig | variable-E")
      ->required();
  verify->add_option("--m", m_list, "mode counts for the m-study");
  verify->add_option("--dt", dt_list,
                     "step sizes (single value: dt for the m-study; two or "
                     "more: dt-study)");
  verify->add_option("--scheme", scheme, "time integration scheme");
  verify->add_option("--horizon", horizon, "final time of the study");
  verify->add_option("--out", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(config_path, out_dir, false);
    if (energy->parsed()) return cmd_solve(config_path, out_dir, true);
    if (contract->parsed()) return cmd_contract(config_path, out_dir, eps, seed);
    if (verify->parsed())
      return cmd_verify(case_id, out_dir, m_list, dt_list, scheme, horizon);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
