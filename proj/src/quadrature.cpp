#include "coaxheat/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace coaxheat {

QuadratureRule gauss_rule(int n) {
  if (n < 1) throw std::invalid_argument("gauss_rule: n must be >= 1");

  Eigen::VectorXd x(n), w(n);
  // Newton iteration on Legendre polynomials, Chebyshev initial guess.
  // Roots come out in decreasing order on (-1,1); exploit symmetry.
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Evaluate P_n(z) and P_n'(z) by the three-term recurrence.
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-15) break;
    }
    double weight = 2.0 / ((1.0 - z * z) * pp * pp);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = weight;
    w[n - 1 - i] = weight;
  }

  // Map from (-1,1) to (0,1).
  QuadratureRule rule;
  rule.nodes = (x.array() + 1.0) * 0.5;
  rule.weights = w * 0.5;
  return rule;
}

}  // namespace coaxheat
