#include "eddy/reformulate/kkt.hpp"

#include <cmath>

#include "eddy/reformulate/sylvester_problem.hpp"

namespace eddy {

namespace {

void guard(Index dim, const char* who) {
  if (double(dim) * double(dim) > kDenseEntryGuard)
    throw DenseGuardError(std::string(who) + ": dense system of dimension " + std::to_string(dim) +
                          " exceeds the oracle size guard");
}

Eigen::MatrixXd block_mass(const Eigen::MatrixXd& m, int steps) {
  return kron(Eigen::MatrixXd::Identity(steps, steps), m);
}

}  // namespace

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::MatrixXd dense_n_sigma(const fem::SpaceOperators& ops, double sigma, double tau, int steps) {
  const Eigen::MatrixXd m(ops.mass), k(ops.stiffness);
  const Eigen::MatrixXd c(time_difference_matrix(steps));
  return kron(Eigen::MatrixXd::Identity(steps, steps), tau * k) + kron(c, sigma * m);
}

KktSystem assemble_kkt_dense(const fem::SpaceOperators& ops, const ProblemConfig& config, const TimeGrid& grid,
                             const Eigen::MatrixXd& yd) {
  const Index n = ops.n();
  const Index nm = n * grid.steps;
  guard(2 * nm, "assemble_kkt_dense");
  if (yd.rows() != n || yd.cols() != grid.steps) throw std::invalid_argument("assemble_kkt_dense: bad Y_d shape");
  const double tau = grid.tau(), sb = std::sqrt(config.beta);
  const Eigen::MatrixXd mm = block_mass(Eigen::MatrixXd(ops.mass), grid.steps);
  const Eigen::MatrixXd ns = dense_n_sigma(ops, config.effective_sigma(), tau, grid.steps);

  KktSystem sys;
  sys.n = n;
  sys.steps = grid.steps;
  sys.blocks = 2;
  sys.matrix.resize(2 * nm, 2 * nm);
  sys.matrix << tau * mm, sb * ns.transpose(), sb * ns, -tau * mm;
  sys.rhs = Eigen::VectorXd::Zero(2 * nm);
  sys.rhs.head(nm) = tau * mm * yd.reshaped();
  return sys;
}

KktSystem assemble_kkt3_dense(const fem::SpaceOperators& ops, const ProblemConfig& config, const TimeGrid& grid,
                              const Eigen::MatrixXd& yd) {
  const Index n = ops.n();
  const Index nm = n * grid.steps;
  guard(3 * nm, "assemble_kkt3_dense");
  if (yd.rows() != n || yd.cols() != grid.steps) throw std::invalid_argument("assemble_kkt3_dense: bad Y_d shape");
  const double tau = grid.tau(), beta = config.beta;
  const Eigen::MatrixXd mm = block_mass(Eigen::MatrixXd(ops.mass), grid.steps);
  const Eigen::MatrixXd ns = dense_n_sigma(ops, config.effective_sigma(), tau, grid.steps);
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(nm, nm);

  KktSystem sys;
  sys.n = n;
  sys.steps = grid.steps;
  sys.blocks = 3;
  sys.matrix.resize(3 * nm, 3 * nm);
  sys.matrix << tau * mm, zero, ns.transpose(),  //
      zero, tau * beta * mm, -tau * mm,          //
      ns, -tau * mm, zero;
  sys.rhs = Eigen::VectorXd::Zero(3 * nm);
  sys.rhs.head(nm) = tau * mm * yd.reshaped();
  return sys;
}

Eigen::VectorXd solve_dense(const KktSystem& system) { return system.matrix.partialPivLu().solve(system.rhs); }

KktSolution unpack_kkt_solution(const KktSystem& system, const Eigen::VectorXd& x, double beta) {
  const Index n = system.n;
  const int steps = system.steps;
  const Index nm = n * steps;
  KktSolution out;
  out.state = x.head(nm).reshaped(n, steps);
  if (system.blocks == 2) {
    out.multiplier = std::sqrt(beta) * x.segment(nm, nm).reshaped(n, steps);
    out.control = out.multiplier / beta;
  } else {
    out.control = x.segment(nm, nm).reshaped(n, steps);
    out.multiplier = x.segment(2 * nm, nm).reshaped(n, steps);
  }
  return out;
}

KktSystem assemble_split_kronecker(const fem::SpaceOperators& ops, const ProblemConfig& config, const TimeGrid& grid,
                                   const Eigen::MatrixXd& yd) {
  const Index n = ops.n();
  const int steps = grid.steps;
  guard(2 * n * steps, "assemble_split_kronecker");
  const double tau = grid.tau(), sb = std::sqrt(config.beta), sigma = config.effective_sigma();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(steps, steps);
  const Eigen::MatrixXd c(time_difference_matrix(steps));
  Eigen::MatrixXd p1(2 * steps, 2 * steps), p2(2 * steps, 2 * steps);
  p1 << tau * id, sigma * sb * c.transpose(), sigma * sb * c, -tau * id;
  p2 << Eigen::MatrixXd::Zero(steps, steps), tau * sb * id, tau * sb * id, Eigen::MatrixXd::Zero(steps, steps);

  const Eigen::MatrixXd m(ops.mass), k(ops.stiffness);
  KktSystem sys;
  sys.n = n;
  sys.steps = steps;
  sys.blocks = 2;
  // vec(M X P) = (P^T (x) M) vec(X)
  sys.matrix = kron(p1.transpose(), m) + kron(p2.transpose(), k);
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n, 2 * steps);
  rhs.leftCols(steps) = tau * m * yd;
  sys.rhs = rhs.reshaped();
  return sys;
}

Eigen::MatrixXd solve_sylvester_kronecker(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                          const Eigen::MatrixXd& r) {
  const Index p = a.rows(), q = b.rows();
  guard(p * q, "solve_sylvester_kronecker");
  const Eigen::MatrixXd op =
      kron(Eigen::MatrixXd::Identity(q, q), a) + kron(b.transpose(), Eigen::MatrixXd::Identity(p, p));
  const Eigen::VectorXd x = op.partialPivLu().solve(r.reshaped().eval());
  return x.reshaped(p, q);
}

}  // namespace eddy
