#include "coaxheat/model.hpp"

#include <cmath>
#include <sstream>

namespace coaxheat {

namespace {

using expr::Expr;

Expr require_expr(const std::map<std::string, std::string>& config,
                  const std::string& key) {
  auto it = config.find(key);
  if (it == config.end()) throw ModelError("missing config key '" + key + "'");
  try {
    return Expr::parse(it->second);
  } catch (const expr::ParseError& e) {
    throw ModelError("config key '" + key + "': " + e.what());
  }
}

double require_number(const std::map<std::string, std::string>& config,
                      const std::string& key) {
  auto it = config.find(key);
  if (it == config.end()) throw ModelError("missing config key '" + key + "'");
  try {
    std::size_t used = 0;
    double v = std::stod(it->second, &used);
    while (used < it->second.size() && std::isspace(static_cast<unsigned char>(it->second[used]))) ++used;
    if (used != it->second.size()) throw std::invalid_argument(it->second);
    return v;
  } catch (const std::exception&) {
    throw ModelError("config key '" + key + "' is not a number: '" +
                     it->second + "'");
  }
}

std::string format_violation(const std::string& what, const std::string& name,
                             double x, double value) {
  std::ostringstream os;
  os << what << ": " << name << "(" << x << ") = " << value;
  return os.str();
}

}  // namespace

ProblemSpec build_problem(const std::map<std::string, std::string>& config) {
  ProblemSpec p;
  static const char* regions[4] = {"f", "s", "g", "p"};
  for (int a = 0; a < 4; ++a) {
    p.E[a] = require_expr(config, std::string("E_") + regions[a]);
    p.S[a] = require_expr(config, std::string("S_") + regions[a]);
    p.T0[a] = require_expr(config, std::string("T0_") + regions[a]);
  }
  for (int j = 0; j < 6; ++j)
    p.K[j] = require_expr(config, "K_" + std::to_string(j + 1));
  p.f_f = require_number(config, "f_f");
  p.f_g = require_number(config, "f_g");
  p.f0 = require_number(config, "f_0");
  p.g0 = require_number(config, "g_0");
  p.horizon = require_number(config, "horizon");
  if (auto it = config.find("eps_E"); it != config.end())
    p.eps_E = require_number(config, "eps_E");
  validate_problem(p);
  return p;
}

void validate_problem(const ProblemSpec& p) {
  if (p.f_f <= 0.0) throw ModelError("convection speed f_f must be positive");
  if (p.f_g <= 0.0) throw ModelError("convection speed f_g must be positive");
  if (p.f0 <= 0.0) throw ModelError("inlet temperature f_0 must be positive");
  if (p.g0 <= 0.0) throw ModelError("inlet temperature g_0 must be positive");
  if (p.horizon <= 0.0) throw ModelError("horizon must be positive");

  static const char* regions[4] = {"f", "s", "g", "p"};
  const int n = kValidationGridSize;
  for (int i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / (n - 1);
    for (int a = 0; a < 4; ++a) {
      const double e = p.E[a].eval(x, 0.0);
      if (!(e >= p.eps_E))
        throw ModelError(format_violation(
            "diffusion coefficient below positivity threshold",
            std::string("E_") + regions[a], x, e));
      const double t0 = p.T0[a].eval(x, 0.0);
      if (!(t0 >= 0.0))
        throw ModelError(format_violation(
            "initial temperature negative", std::string("T0_") + regions[a],
            x, t0));
    }
    for (int j = 0; j < 6; ++j) {
      const double k = p.K[j].eval(x, 0.0);
      if (!(k >= 0.0))
        throw ModelError(format_violation("exchange rate negative",
                                          "K_" + std::to_string(j + 1), x, k));
    }
  }
  // Raw sources must be nonnegative in time (the shifted combined sources
  // may change sign; only the S_a hypothesis is checked).
  for (int i = 0; i < n; ++i) {
    const double t = p.horizon * static_cast<double>(i) / (n - 1);
    for (int a = 0; a < 4; ++a) {
      const double s = p.S[a].eval(0.0, t);
      if (!(s >= 0.0))
        throw ModelError(format_violation("source negative",
                                          std::string("S_") + regions[a], t,
                                          s));
    }
  }
}

HomogeneousProblem shift_to_homogeneous(const ProblemSpec& p) {
  using expr::Expr;
  HomogeneousProblem h;
  h.E = p.E;
  h.f_f = p.f_f;
  h.f_g = p.f_g;
  h.K = p.K;
  h.f0 = p.f0;
  h.g0 = p.g0;
  h.horizon = p.horizon;

  const Expr f0 = Expr::constant(p.f0);
  const Expr g0 = Expr::constant(p.g0);
  h.U0[0] = p.T0[0] - f0;
  h.U0[1] = p.T0[1];
  h.U0[2] = p.T0[2] - g0;
  h.U0[3] = p.T0[3];

  h.source[0] = -(f0 * p.K[0]) + p.S[0];
  h.source[1] = f0 * p.K[1] + g0 * p.K[2] + p.S[1];
  h.source[2] = -(g0 * (p.K[3] + p.K[4])) + p.S[2];
  h.source[3] = g0 * p.K[5] + p.S[3];

  const double tol = 1e-10;
  const double u0f_inlet = h.U0[0].eval(0.0, 0.0);
  if (std::fabs(u0f_inlet) > tol) {
    std::ostringstream os;
    os << "inlet compatibility: T0_f(0) - f_0 = " << u0f_inlet
       << " (initial data incompatible with the fluid inlet value)";
    h.warnings.push_back(os.str());
  }
  const double u0g_inlet = h.U0[2].eval(1.0, 0.0);
  if (std::fabs(u0g_inlet) > tol) {
    std::ostringstream os;
    os << "inlet compatibility: T0_g(1) - g_0 = " << u0g_inlet
       << " (initial data incompatible with the gas inlet value)";
    h.warnings.push_back(os.str());
  }
  return h;
}

std::array<std::vector<double>, 4> unshift(
    const std::array<std::vector<double>, 4>& u_values, const ProblemSpec& p) {
  std::array<std::vector<double>, 4> t_values = u_values;
  const double lift[4] = {p.f0, 0.0, p.g0, 0.0};
  for (int a = 0; a < 4; ++a)
    for (double& v : t_values[a]) v += lift[a];
  return t_values;
}

}  // namespace coaxheat
