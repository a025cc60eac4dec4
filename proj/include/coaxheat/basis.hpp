#pragma once

#include <Eigen/Core>
#include <array>
#include <functional>
#include <string>

#include "coaxheat/quadrature.hpp"

namespace coaxheat {

/// The four regions of the exchanger: fluid (f), separating wall (s),
/// gas (g) and insulating wall (p).
enum class Region { F = 0, S = 1, G = 2, P = 3 };

constexpr std::array<Region, 4> kRegions = {Region::F, Region::S, Region::G,
                                            Region::P};

inline int region_index(Region r) { return static_cast<int>(r); }
const char* region_name(Region r);

/// L2-orthonormal spectral family on [0,1] with analytic derivatives.
///
/// Fluid:      psi_k(x) = sqrt(2) sin((k-1/2) pi x)        (psi_k(0) = 0)
/// Gas:        psi_k(x) = sqrt(2) sin((k-1/2) pi (1-x))    (psi_k(1) = 0)
/// Walls s,p:  psi_1 = 1, psi_k(x) = sqrt(2) cos((k-1) pi x) for k >= 2
///
/// The fluid/gas families satisfy the essential inlet conditions exactly and
/// the natural zero-flux conditions at the opposite ends pointwise.
struct BasisFamily {
  Region region;
  int m;

  /// Value of psi_i (i is 1-based) or its first/second derivative at x.
  double eval(int i, double x, int derivative_order = 0) const;

  /// Column vector (psi_1(x), ..., psi_m(x)).
  Eigen::VectorXd eval_all(double x, int derivative_order = 0) const;
};

BasisFamily build_basis(Region region, int m);

/// Matrix of weighted inner products between two families:
/// entries(i,j) = <K psi_j^(source), psi_i^(target)>.
struct CrossGram {
  Region source;
  Region target;
  Eigen::MatrixXd entries;
};

CrossGram cross_gram(const BasisFamily& source, const BasisFamily& target,
                     const std::function<double(double)>& weight,
                     const QuadratureRule& quad);

/// Coupling block by the truncated change-of-basis device: each source
/// function is expanded in the first `truncation` target modes
/// (gamma_{kj} = <psi_j^(source), psi_k^(target)>) and the weight is applied
/// inside the target family. Entry (i,j) approximates
/// <K psi_j^(source), psi_i^(target)> and converges entrywise to the direct
/// cross_gram as the truncation level grows.
Eigen::MatrixXd truncated_coupling_block(
    const BasisFamily& source, const BasisFamily& target,
    const std::function<double(double)>& weight, int truncation,
    const QuadratureRule& quad);

/// max_{i,j} |<psi_i, psi_j> - delta_ij| under the given rule.
double check_orthonormality(const BasisFamily& family,
                            const QuadratureRule& quad);

}  // namespace coaxheat
