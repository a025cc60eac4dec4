#pragma once

#include <Eigen/Core>
#include <functional>

namespace coaxheat {

/// Quadrature rule on the unit interval (0,1). Nodes are strictly
/// increasing; weights sum to 1.
struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;

  int size() const { return static_cast<int>(nodes.size()); }

  double integrate(const std::function<double(double)>& f) const {
    double s = 0.0;
    for (int q = 0; q < size(); ++q) s += weights[q] * f(nodes[q]);
    return s;
  }
};

/// n-node Gauss-Legendre rule mapped from (-1,1) to (0,1).
/// Exact for polynomials of degree <= 2n-1.
QuadratureRule gauss_rule(int n);

/// Reference rule for assembling with m modes per region:
/// max(64, 2m+16) nodes resolves all trigonometric mode products at
/// double precision for desk-scale m.
inline QuadratureRule reference_rule(int m) {
  return gauss_rule(std::max(64, 2 * m + 16));
}

}  // namespace coaxheat
