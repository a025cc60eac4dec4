#include "coaxheat/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace coaxheat {

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

const char* region_name(Region r) {
  switch (r) {
    case Region::F: return "f";
    case Region::S: return "s";
    case Region::G: return "g";
    case Region::P: return "p";
  }
  return "?";
}

double BasisFamily::eval(int i, double x, int order) const {
  if (i < 1 || i > m) throw std::out_of_range("basis index out of range");
  if (order < 0 || order > 2)
    throw std::out_of_range("derivative order must be 0, 1 or 2");

  switch (region) {
    case Region::F: {
      const double mu = (i - 0.5) * M_PI;
      switch (order) {
        case 0: return kSqrt2 * std::sin(mu * x);
        case 1: return kSqrt2 * mu * std::cos(mu * x);
        default: return -kSqrt2 * mu * mu * std::sin(mu * x);
      }
    }
    case Region::G: {
      const double mu = (i - 0.5) * M_PI;
      const double y = 1.0 - x;
      switch (order) {
        case 0: return kSqrt2 * std::sin(mu * y);
        case 1: return -kSqrt2 * mu * std::cos(mu * y);
        default: return -kSqrt2 * mu * mu * std::sin(mu * y);
      }
    }
    case Region::S:
    case Region::P: {
      if (i == 1) return order == 0 ? 1.0 : 0.0;
      const double nu = (i - 1) * M_PI;
      switch (order) {
        case 0: return kSqrt2 * std::cos(nu * x);
        case 1: return -kSqrt2 * nu * std::sin(nu * x);
        default: return -kSqrt2 * nu * nu * std::cos(nu * x);
      }
    }
  }
  throw std::logic_error("unknown region");
}

Eigen::VectorXd BasisFamily::eval_all(double x, int order) const {
  Eigen::VectorXd v(m);
  for (int i = 1; i <= m; ++i) v[i - 1] = eval(i, x, order);
  return v;
}

BasisFamily build_basis(Region region, int m) {
  if (m < 1) throw std::invalid_argument("build_basis: m must be >= 1");
  return BasisFamily{region, m};
}

CrossGram cross_gram(const BasisFamily& source, const BasisFamily& target,
                     const std::function<double(double)>& weight,
                     const QuadratureRule& quad) {
  if (source.m != target.m)
    throw std::invalid_argument("cross_gram: family sizes differ");
  const int m = source.m;
  Eigen::MatrixXd entries = Eigen::MatrixXd::Zero(m, m);
  for (int q = 0; q < quad.size(); ++q) {
    const double x = quad.nodes[q];
    const double wk = quad.weights[q] * weight(x);
    if (wk == 0.0) continue;
    entries.noalias() += wk * target.eval_all(x) * source.eval_all(x).transpose();
  }
  return CrossGram{source.region, target.region, std::move(entries)};
}

Eigen::MatrixXd truncated_coupling_block(
    const BasisFamily& source, const BasisFamily& target,
    const std::function<double(double)>& weight, int truncation,
    const QuadratureRule& quad) {
  if (truncation < 1)
    throw std::invalid_argument(
        "truncated_coupling_block: truncation must be >= 1");
  const BasisFamily expanded{target.region, truncation};
  // gamma(k, j) = <psi_j^(source), psi_k^(target)>,
  // wgram(i, k) = <K psi_k^(target), psi_i^(target)>.
  Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(truncation, source.m);
  Eigen::MatrixXd wgram = Eigen::MatrixXd::Zero(target.m, truncation);
  for (int q = 0; q < quad.size(); ++q) {
    const double x = quad.nodes[q];
    const double w = quad.weights[q];
    const Eigen::VectorXd te = expanded.eval_all(x);
    gamma.noalias() += w * te * source.eval_all(x).transpose();
    wgram.noalias() +=
        (w * weight(x)) * target.eval_all(x) * te.transpose();
  }
  return wgram * gamma;
}

double check_orthonormality(const BasisFamily& family,
                            const QuadratureRule& quad) {
  auto one = [](double) { return 1.0; };
  Eigen::MatrixXd gram = cross_gram(family, family, one, quad).entries;
  gram.diagonal().array() -= 1.0;
  return gram.cwiseAbs().maxCoeff();
}

}  // namespace coaxheat
