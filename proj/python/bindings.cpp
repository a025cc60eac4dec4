// Python bindings for the main operations: expressions, problem setup,
// assembly, time integration, estimates and the verification instruments.

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coaxheat/config.hpp"
#include "coaxheat/estimates.hpp"
#include "coaxheat/verify.hpp"

namespace py = pybind11;
using namespace coaxheat;

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Spectral Galerkin solver for a four-field exchanger system";

  py::register_exception<expr::ParseError>(mod, "ParseError");
  py::register_exception<expr::EvalError>(mod, "EvalError");
  py::register_exception<ModelError>(mod, "ModelError");
  py::register_exception<IntegrateError>(mod, "IntegrateError");
  py::register_exception<ConfigError>(mod, "ConfigError");

  py::class_<expr::Expr>(mod, "Expr")
      .def_static("parse", &expr::Expr::parse)
      .def_static("constant", &expr::Expr::constant)
      .def("eval", &expr::Expr::eval, py::arg("x"), py::arg("t") = 0.0)
      .def("diff", &expr::Expr::diff)
      .def("depends_on", &expr::Expr::depends_on)
      .def("__str__", &expr::Expr::str)
      .def("__call__", &expr::Expr::eval, py::arg("x"), py::arg("t") = 0.0);

  py::enum_<Region>(mod, "Region")
      .value("F", Region::F)
      .value("S", Region::S)
      .value("G", Region::G)
      .value("P", Region::P);

  py::enum_<Scheme>(mod, "Scheme")
      .value("BackwardEuler", Scheme::BackwardEuler)
      .value("CrankNicolson", Scheme::CrankNicolson)
      .value("Exponential", Scheme::Exponential);

  py::enum_<SignConvention>(mod, "SignConvention")
      .value("Eq9", SignConvention::Eq9)
      .value("PaperBlock", SignConvention::PaperBlock);

  py::class_<QuadratureRule>(mod, "QuadratureRule")
      .def_readonly("nodes", &QuadratureRule::nodes)
      .def_readonly("weights", &QuadratureRule::weights)
      .def("size", &QuadratureRule::size)
      .def("integrate", &QuadratureRule::integrate);
  mod.def("gauss_rule", &gauss_rule);
  mod.def("reference_rule", &reference_rule);

  py::class_<BasisFamily>(mod, "BasisFamily")
      .def_readonly("region", &BasisFamily::region)
      .def_readonly("m", &BasisFamily::m)
      .def("eval", &BasisFamily::eval, py::arg("i"), py::arg("x"),
           py::arg("derivative_order") = 0)
      .def("eval_all", &BasisFamily::eval_all, py::arg("x"),
           py::arg("derivative_order") = 0);
  mod.def("build_basis", &build_basis);
  mod.def("check_orthonormality", &check_orthonormality);
  mod.def("truncated_coupling_block", &truncated_coupling_block);

  py::class_<ProblemSpec>(mod, "ProblemSpec")
      .def_readonly("f0", &ProblemSpec::f0)
      .def_readonly("g0", &ProblemSpec::g0)
      .def_readonly("horizon", &ProblemSpec::horizon);

  py::class_<HomogeneousProblem>(mod, "HomogeneousProblem")
      .def_readonly("horizon", &HomogeneousProblem::horizon)
      .def_readonly("warnings", &HomogeneousProblem::warnings);
  mod.def("build_problem", &build_problem);
  mod.def("shift_to_homogeneous", &shift_to_homogeneous);

  py::class_<GalerkinSystem>(mod, "GalerkinSystem")
      .def_readonly("m", &GalerkinSystem::m)
      .def_readonly("A", &GalerkinSystem::A)
      .def_readonly("alpha0", &GalerkinSystem::alpha0)
      .def("source", &GalerkinSystem::source)
      .def("source_norm_sq", &GalerkinSystem::source_norm_sq);
  mod.def("assemble_system", &assemble_system, py::arg("problem"),
          py::arg("m"), py::arg("quad"),
          py::arg("sign") = SignConvention::Eq9);

  py::class_<CoefficientTrajectory>(mod, "CoefficientTrajectory")
      .def_readonly("times", &CoefficientTrajectory::times)
      .def_readonly("states", &CoefficientTrajectory::states)
      .def_readonly("dt", &CoefficientTrajectory::dt)
      .def("steps", &CoefficientTrajectory::steps);
  mod.def("solve_trajectory", &solve_trajectory);

  py::class_<SolutionField>(mod, "SolutionField")
      .def_readonly("x_grid", &SolutionField::x_grid)
      .def_readonly("times", &SolutionField::times)
      .def_readonly("values", &SolutionField::values)
      .def_readonly("notes", &SolutionField::notes);
  mod.def("reconstruct", &reconstruct, py::arg("traj"), py::arg("system"),
          py::arg("x_grid"), py::arg("unshift") = false, py::arg("f0") = 0.0,
          py::arg("g0") = 0.0);
  mod.def("uniform_grid", &uniform_grid);

  py::class_<EnergyConstants>(mod, "EnergyConstants")
      .def_readonly("beta_f", &EnergyConstants::beta_f)
      .def_readonly("beta_g", &EnergyConstants::beta_g)
      .def_readonly("gamma_f", &EnergyConstants::gamma_f)
      .def_readonly("gamma_g", &EnergyConstants::gamma_g)
      .def_readonly("M1", &EnergyConstants::M1)
      .def_readonly("M2", &EnergyConstants::M2)
      .def_readonly("M3", &EnergyConstants::M3)
      .def_readonly("C1", &EnergyConstants::C1)
      .def_readonly("C2", &EnergyConstants::C2)
      .def_readonly("kappa", &EnergyConstants::kappa);

  py::class_<EnergyReport>(mod, "EnergyReport")
      .def_readonly("times", &EnergyReport::times)
      .def_readonly("h2_norm_sq", &EnergyReport::h2_norm_sq)
      .def_readonly("v_norm_sq", &EnergyReport::v_norm_sq)
      .def_readonly("source_norm_sq", &EnergyReport::source_norm_sq)
      .def_readonly("dissipation_residual", &EnergyReport::dissipation_residual)
      .def_readonly("gronwall_margin", &EnergyReport::gronwall_margin)
      .def_readonly("weak_residual", &EnergyReport::weak_residual);

  py::class_<RegularityReport>(mod, "RegularityReport")
      .def_readonly("sup_v_norm", &RegularityReport::sup_v_norm)
      .def_readonly("dt_u_l2", &RegularityReport::dt_u_l2)
      .def_readonly("h2_sobolev_l2", &RegularityReport::h2_sobolev_l2)
      .def_readonly("data_norm", &RegularityReport::data_norm)
      .def_readonly("ratio", &RegularityReport::ratio);

  mod.def("derive_constants", &derive_constants);
  mod.def("norms", &norms);
  mod.def("check_energy_inequality", &check_energy_inequality);
  mod.def("check_gronwall_bound", &check_gronwall_bound);
  mod.def("check_contraction", &check_contraction);
  mod.def("regularity_report", &regularity_report);
  mod.def("weak_residual", &weak_residual);

  py::class_<ManufacturedCase>(mod, "ManufacturedCase")
      .def_readonly("name", &ManufacturedCase::name)
      .def_readonly("exact", &ManufacturedCase::exact)
      .def_readonly("problem", &ManufacturedCase::problem);

  py::class_<FieldDiscrepancy>(mod, "FieldDiscrepancy")
      .def_readonly("l2", &FieldDiscrepancy::l2)
      .def_readonly("linf", &FieldDiscrepancy::linf);

  py::class_<ConvergenceRow>(mod, "ConvergenceRow")
      .def_readonly("param", &ConvergenceRow::param)
      .def_readonly("error", &ConvergenceRow::error)
      .def_readonly("rate", &ConvergenceRow::rate);

  mod.def("manufactured_catalog", &manufactured_catalog);
  mod.def("build_manufactured", &build_manufactured);
  mod.def("manufactured_residual", &manufactured_residual, py::arg("case"),
          py::arg("x"), py::arg("t"), py::arg("h") = 1e-3);
  mod.def("fd_oracle_solve", &fd_oracle_solve);
  mod.def("compare_fields", &compare_fields);
  mod.def("galerkin_error_vs_exact", &galerkin_error_vs_exact, py::arg("case"),
          py::arg("m"), py::arg("dt"), py::arg("scheme"), py::arg("T"),
          py::arg("nx") = 128, py::arg("max_time_samples") = 101);
  mod.def("fd_error_vs_exact", &fd_error_vs_exact, py::arg("case"),
          py::arg("n"), py::arg("dt"), py::arg("T"),
          py::arg("max_time_samples") = 101);
  mod.def("convergence_study_m", &convergence_study_m);
  mod.def("convergence_study_dt", &convergence_study_dt);
  mod.def("cross_method_discrepancy", &cross_method_discrepancy);

  py::class_<RunConfig>(mod, "RunConfig")
      .def_readonly("problem", &RunConfig::problem)
      .def_readonly("m", &RunConfig::m)
      .def_readonly("dt", &RunConfig::dt)
      .def_readonly("scheme", &RunConfig::scheme)
      .def_readonly("x_points", &RunConfig::x_points)
      .def_readonly("sign", &RunConfig::sign)
      .def_readonly("margin_tol", &RunConfig::margin_tol);
  mod.def("load_config", &load_config);
  mod.def("parse_config_text", &parse_config_text, py::arg("text"),
          py::arg("origin") = "<string>");
}
