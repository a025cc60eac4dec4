#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "coaxheat/basis.hpp"
#include "coaxheat/expr.hpp"

namespace coaxheat {

/// Full problem data for the four-field exchanger system on (0,1):
/// diffusion E_a(x), convection speeds f_f/f_g, exchange rates K_1..K_6(x),
/// region sources S_a(t), inlet temperatures f_0/g_0, initial fields and
/// the final time.
struct ProblemSpec {
  std::array<expr::Expr, 4> E;    // E_f, E_s, E_g, E_p
  double f_f = 1.0;
  double f_g = 1.0;
  std::array<expr::Expr, 6> K;    // K_1 .. K_6
  std::array<expr::Expr, 4> S;    // S_f, S_s, S_g, S_p (functions of t)
  double f0 = 1.0;
  double g0 = 1.0;
  std::array<expr::Expr, 4> T0;   // initial temperature per region
  double horizon = 1.0;

  double eps_E = 1e-8;            // lower bound required of each E_a
};

/// Number of points in the hypothesis-validation grid.
inline constexpr int kValidationGridSize = 257;

/// Problem after subtracting the inlet lift (f0, 0, g0, 0): homogeneous
/// essential conditions, shifted initial fields and the combined source
/// terms as functions of (x,t).
struct HomogeneousProblem {
  std::array<expr::Expr, 4> E;
  double f_f = 1.0;
  double f_g = 1.0;
  std::array<expr::Expr, 6> K;
  double f0 = 1.0;
  double g0 = 1.0;
  std::array<expr::Expr, 4> U0;       // shifted initial fields (x)
  std::array<expr::Expr, 4> source;   // shifted sources (x,t)
  double horizon = 1.0;

  std::vector<std::string> warnings;  // inlet compatibility notices
};

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Build and validate a ProblemSpec from string-keyed config values.
/// Expression-valued keys: E_f E_s E_g E_p, K_1..K_6, S_f S_s S_g S_p,
/// T0_f T0_s T0_g T0_p. Number-valued keys: f_f f_g f_0 g_0 horizon.
/// Throws ModelError naming the missing key or the violated hypothesis
/// (with the offending grid point).
ProblemSpec build_problem(const std::map<std::string, std::string>& config);

/// Validate an already-populated spec against the positivity hypotheses
/// on the 257-point grid. Throws ModelError on violation.
void validate_problem(const ProblemSpec& p);

/// Subtract the inlet lift. U0_f = T0_f - f0, U0_g = T0_g - g0, walls
/// unchanged; sources combine the lift applied to the exchange terms with
/// the raw S_a(t). Inlet incompatibility (T0_f(0) != f0 or T0_g(1) != g0)
/// is recorded as a warning, not an error.
HomogeneousProblem shift_to_homogeneous(const ProblemSpec& p);

/// Add the inlet lift back to shifted field values: T_f = U_f + f0,
/// T_g = U_g + g0, walls unchanged.
std::array<std::vector<double>, 4> unshift(
    const std::array<std::vector<double>, 4>& u_values, const ProblemSpec& p);

}  // namespace coaxheat
