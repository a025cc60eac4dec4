#include "coaxheat/assembly.hpp"

#include <cstdlib>
#include <future>
#include <thread>
#include <vector>

namespace coaxheat {

int max_threads() {
  if (const char* env = std::getenv("SOLVER_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

Eigen::VectorXd GalerkinSystem::source(double t) const {
  Eigen::VectorXd s(4 * m);
  const int nq = static_cast<int>(quad_nodes.size());
  Eigen::VectorXd values(nq);
  for (int a = 0; a < 4; ++a) {
    for (int q = 0; q < nq; ++q)
      values[q] = source_exprs[a].eval(quad_nodes[q], t);
    s.segment(a * m, m).noalias() = basis_at_nodes[a] * values;
  }
  return s;
}

double GalerkinSystem::source_norm_sq(double t) const {
  // basis_at_nodes rows carry the quadrature weights; recover them from the
  // first wall mode (psi_1 = 1), which stores w_q directly.
  const Eigen::MatrixXd& wall = basis_at_nodes[region_index(Region::S)];
  double total = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int q = 0; q < quad_nodes.size(); ++q) {
      const double v = source_exprs[a].eval(quad_nodes[q], t);
      total += wall(0, q) * v * v;
    }
  }
  return total;
}

Eigen::MatrixXd assemble_diag_block(Region region, const BasisFamily& basis,
                                    const HomogeneousProblem& problem,
                                    const QuadratureRule& quad) {
  const int a = region_index(region);
  const int m = basis.m;
  Eigen::MatrixXd block = Eigen::MatrixXd::Zero(m, m);

  // Mass weight per region: K1, K2+K3, K4+K5, K6.
  auto mass_weight = [&](double x) {
    switch (region) {
      case Region::F: return problem.K[0].eval(x, 0.0);
      case Region::S: return problem.K[1].eval(x, 0.0) + problem.K[2].eval(x, 0.0);
      case Region::G: return problem.K[3].eval(x, 0.0) + problem.K[4].eval(x, 0.0);
      case Region::P: return problem.K[5].eval(x, 0.0);
    }
    return 0.0;
  };
  const double conv =
      region == Region::F ? problem.f_f : (region == Region::G ? -problem.f_g : 0.0);

  for (int q = 0; q < quad.size(); ++q) {
    const double x = quad.nodes[q];
    const double w = quad.weights[q];
    const Eigen::VectorXd phi = basis.eval_all(x);
    const Eigen::VectorXd dphi = basis.eval_all(x, 1);
    const double e = problem.E[a].eval(x, 0.0);
    const double k = mass_weight(x);
    // Row = test function i, column = trial function j.
    block.noalias() += (w * e) * dphi * dphi.transpose();
    block.noalias() += (w * k) * phi * phi.transpose();
    if (conv != 0.0) block.noalias() += (w * conv) * phi * dphi.transpose();
  }
  return block;
}

Eigen::MatrixXd assemble_coupling_block(const CouplingPair& pair,
                                        const expr::Expr& weight,
                                        const std::array<BasisFamily, 4>& bases,
                                        const QuadratureRule& quad) {
  auto w = [&weight](double x) { return weight.eval(x, 0.0); };
  return cross_gram(bases[region_index(pair.source)],
                    bases[region_index(pair.target)], w, quad)
      .entries;
}

Eigen::MatrixXd assemble_v_gram(Region region, const BasisFamily& basis,
                                const HomogeneousProblem& problem,
                                const QuadratureRule& quad) {
  const int a = region_index(region);
  const int m = basis.m;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(m, m);
  auto mass_weight = [&](double x) {
    switch (region) {
      case Region::F: return problem.K[0].eval(x, 0.0);
      case Region::S: return problem.K[1].eval(x, 0.0) + problem.K[2].eval(x, 0.0);
      case Region::G: return problem.K[3].eval(x, 0.0) + problem.K[4].eval(x, 0.0);
      case Region::P: return problem.K[5].eval(x, 0.0);
    }
    return 0.0;
  };
  for (int q = 0; q < quad.size(); ++q) {
    const double x = quad.nodes[q];
    const double w = quad.weights[q];
    const Eigen::VectorXd phi = basis.eval_all(x);
    const Eigen::VectorXd dphi = basis.eval_all(x, 1);
    gram.noalias() += (w * problem.E[a].eval(x, 0.0)) * dphi * dphi.transpose();
    gram.noalias() += (w * mass_weight(x)) * phi * phi.transpose();
  }
  return gram;
}

Eigen::VectorXd project_field(const std::function<double(double)>& field,
                              const BasisFamily& basis,
                              const QuadratureRule& quad) {
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(basis.m);
  for (int q = 0; q < quad.size(); ++q) {
    const double x = quad.nodes[q];
    coeffs.noalias() += (quad.weights[q] * field(x)) * basis.eval_all(x);
  }
  return coeffs;
}

GalerkinSystem assemble_system(const HomogeneousProblem& problem, int m,
                               const QuadratureRule& quad,
                               SignConvention sign) {
  GalerkinSystem sys;
  sys.m = m;
  sys.sign = sign;
  for (Region r : kRegions) sys.bases[region_index(r)] = build_basis(r, m);
  sys.quad_nodes = quad.nodes;
  sys.source_exprs = problem.source;

  struct BlockTask {
    int row, col;
    std::function<Eigen::MatrixXd()> compute;
  };
  std::vector<BlockTask> tasks;
  const double coupling_sign = (sign == SignConvention::Eq9) ? -1.0 : 1.0;
  for (Region r : kRegions) {
    const int a = region_index(r);
    tasks.push_back({a, a, [&, r, a] {
                       return assemble_diag_block(r, sys.bases[a], problem, quad);
                     }});
  }
  for (const CouplingPair& pair : kCouplingPairs) {
    const int row = region_index(pair.target);
    const int col = region_index(pair.source);
    tasks.push_back({row, col, [&, pair, coupling_sign] {
                       return (coupling_sign *
                               assemble_coupling_block(pair, problem.K[pair.k_index],
                                                       sys.bases, quad))
                           .eval();
                     }});
  }

  sys.A = Eigen::MatrixXd::Zero(4 * m, 4 * m);
  const int threads = std::min<int>(max_threads(), static_cast<int>(tasks.size()));
  if (threads > 1) {
    std::vector<std::future<Eigen::MatrixXd>> futures;
    futures.reserve(tasks.size());
    for (const auto& task : tasks)
      futures.push_back(std::async(std::launch::async, task.compute));
    for (std::size_t i = 0; i < tasks.size(); ++i)
      sys.A.block(tasks[i].row * m, tasks[i].col * m, m, m) = futures[i].get();
  } else {
    for (const auto& task : tasks)
      sys.A.block(task.row * m, task.col * m, m, m) = task.compute();
  }

  sys.alpha0.resize(4 * m);
  for (Region r : kRegions) {
    const int a = region_index(r);
    const expr::Expr& u0 = problem.U0[a];
    sys.alpha0.segment(a * m, m) =
        project_field([&u0](double x) { return u0.eval(x, 0.0); }, sys.bases[a],
                      quad);
    sys.v_grams[a] = assemble_v_gram(r, sys.bases[a], problem, quad);

    Eigen::MatrixXd ban(m, quad.size());
    for (int q = 0; q < quad.size(); ++q)
      ban.col(q) = quad.weights[q] * sys.bases[a].eval_all(quad.nodes[q]);
    sys.basis_at_nodes[a] = std::move(ban);
  }
  return sys;
}

}  // namespace coaxheat
