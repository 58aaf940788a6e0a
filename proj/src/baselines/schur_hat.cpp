#include "eddy/baselines/schur_hat.hpp"

#include <cmath>

namespace eddy {

namespace {

la::SparseFactorization factor_time_block(const fem::SpaceOperators& ops, const ProblemConfig& config,
                                          const TimeGrid& grid) {
  config.validate();
  grid.validate();
  const double tau = grid.tau();
  const SpMat d = config.effective_sigma() * ops.mass + tau * ops.stiffness + (tau / std::sqrt(config.beta)) * ops.mass;
  try {
    return la::sparse_spd_factorize(d);
  } catch (const la::FactorizationError& e) {
    throw la::FactorizationError(std::string("SchurHat: time block sigma M + tau K + (tau/sqrt(beta)) M: ") +
                                 e.what());
  }
}

}  // namespace

SchurHat::SchurHat(const fem::SpaceOperators& ops, const ProblemConfig& config, const TimeGrid& grid)
    : mass_(ops.mass),
      coupling_mass_(config.effective_sigma() * ops.mass),
      tau_(grid.tau()),
      coupling_(grid.tau() / std::sqrt(config.beta)),
      steps_(grid.steps),
      diagonal_(factor_time_block(ops, config, grid)) {}

Eigen::MatrixXd SchurHat::solve_lower(const Eigen::MatrixXd& v) const {
  if (v.rows() != n() || v.cols() != steps_) throw std::invalid_argument("SchurHat: expected an n x m_T block");
  Eigen::MatrixXd x(v.rows(), v.cols());
  for (int k = 0; k < steps_; ++k) {
    Eigen::VectorXd rhs = v.col(k);
    if (k > 0) rhs += coupling_mass_ * x.col(k - 1);
    x.col(k) = diagonal_.solve(rhs);
  }
  return x;
}

Eigen::MatrixXd SchurHat::solve_upper(const Eigen::MatrixXd& v) const {
  if (v.rows() != n() || v.cols() != steps_) throw std::invalid_argument("SchurHat: expected an n x m_T block");
  Eigen::MatrixXd x(v.rows(), v.cols());
  for (int k = steps_ - 1; k >= 0; --k) {
    Eigen::VectorXd rhs = v.col(k);
    if (k + 1 < steps_) rhs += coupling_mass_ * x.col(k + 1);
    x.col(k) = diagonal_.solve(rhs);
  }
  return x;
}

Eigen::MatrixXd SchurHat::apply_inverse(const Eigen::MatrixXd& v) const {
  return tau_ * solve_upper(mass_ * solve_lower(v));
}

Eigen::VectorXd apply_schur_hat_inv(const Eigen::VectorXd& v, const fem::SpaceOperators& ops,
                                    const ProblemConfig& config, const TimeGrid& grid) {
  const Index n = ops.n();
  if (v.size() != n * grid.steps) throw std::invalid_argument("apply_schur_hat_inv: length must be n * m_T");
  const SchurHat s(ops, config, grid);
  const Eigen::MatrixXd out = s.apply_inverse(Eigen::Map<const Eigen::MatrixXd>(v.data(), n, grid.steps));
  return Eigen::Map<const Eigen::VectorXd>(out.data(), out.size());
}

}  // namespace eddy
