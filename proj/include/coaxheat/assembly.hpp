#pragma once

#include <Eigen/Core>
#include <array>
#include <functional>

#include "coaxheat/basis.hpp"
#include "coaxheat/model.hpp"
#include "coaxheat/quadrature.hpp"

namespace coaxheat {

/// Sign of the off-diagonal coupling blocks in d(alpha)/dt + A alpha = S(t).
/// Eq9 puts the exchange terms on the left with a minus sign, so
/// A = stiffness - coupling; PaperBlock keeps the coupling blocks with
/// positive sign (available for sensitivity checks only).
enum class SignConvention { Eq9, PaperBlock };

/// The six coupled region pairs (target, source) with their weight index
/// into K_1..K_6: (f,s;K1) (s,f;K2) (s,g;K3) (g,s;K4) (g,p;K5) (p,g;K6).
struct CouplingPair {
  Region target;
  Region source;
  int k_index;  // 0-based into K
};
constexpr std::array<CouplingPair, 6> kCouplingPairs = {{
    {Region::F, Region::S, 0},
    {Region::S, Region::F, 1},
    {Region::S, Region::G, 2},
    {Region::G, Region::S, 3},
    {Region::G, Region::P, 4},
    {Region::P, Region::G, 5},
}};

/// Finite-dimensional system d(alpha)/dt + A alpha = S(t), alpha(0) = alpha0,
/// with m modes per region (state dimension 4m). Orthonormality of the
/// bases makes the mass matrix the identity, so A acts directly.
struct GalerkinSystem {
  int m = 0;
  Eigen::MatrixXd A;                       // 4m x 4m
  Eigen::VectorXd alpha0;                  // length 4m
  std::array<BasisFamily, 4> bases;
  std::array<Eigen::MatrixXd, 4> v_grams;  // V_a inner-product Grams, m x m
  SignConvention sign = SignConvention::Eq9;

  // Source projection machinery: basis_at_nodes[a](i,q) = w_q psi_i(x_q),
  // so the block for region a at time t is basis_at_nodes[a] * S_a(nodes, t).
  std::array<Eigen::MatrixXd, 4> basis_at_nodes;
  Eigen::VectorXd quad_nodes;
  std::array<expr::Expr, 4> source_exprs;

  /// Projected source vector (length 4m) at time t.
  Eigen::VectorXd source(double t) const;

  /// Squared H2 norm of the continuous source fields at time t,
  /// sum over regions of the quadrature of S_a(x,t)^2.
  double source_norm_sq(double t) const;
};

/// Stiffness block: entry (i,j) = a_region(psi_j, psi_i) (row = test index).
Eigen::MatrixXd assemble_diag_block(Region region, const BasisFamily& basis,
                                    const HomogeneousProblem& problem,
                                    const QuadratureRule& quad);

/// Coupling block for one of the six pairs, by direct quadrature:
/// entry (i,j) = <K psi_j^(source), psi_i^(target)>.
Eigen::MatrixXd assemble_coupling_block(const CouplingPair& pair,
                                        const expr::Expr& weight,
                                        const std::array<BasisFamily, 4>& bases,
                                        const QuadratureRule& quad);

/// V_a inner-product Gram of the region's family:
/// <E psi_j', psi_i'> + <k_mass psi_j, psi_i> with the region's mass weight
/// (K1, K2+K3, K4+K5, K6).
Eigen::MatrixXd assemble_v_gram(Region region, const BasisFamily& basis,
                                const HomogeneousProblem& problem,
                                const QuadratureRule& quad);

/// Coefficients <field, psi_i> of the L2-best approximation in the span.
Eigen::VectorXd project_field(const std::function<double(double)>& field,
                              const BasisFamily& basis,
                              const QuadratureRule& quad);

/// Assemble the whole 4m-dimensional system. Respects the SOLVER_THREADS
/// environment variable for block-level parallelism.
GalerkinSystem assemble_system(const HomogeneousProblem& problem, int m,
                               const QuadratureRule& quad,
                               SignConvention sign = SignConvention::Eq9);

/// Thread cap from SOLVER_THREADS (default: hardware concurrency).
int max_threads();

}  // namespace coaxheat
