#include "eddy/baselines/kkt_space.hpp"

#include <cmath>

#include "eddy/la/truncated_svd.hpp"
#include "eddy/reformulate/sylvester_problem.hpp"

namespace eddy {

namespace {

using Eigen::MatrixXd;

Eigen::Map<const MatrixXd> block(const Eigen::VectorXd& v, Index n, Index steps, Index which) {
  return Eigen::Map<const MatrixXd>(v.data() + which * n * steps, n, steps);
}

Eigen::VectorXd stack(const MatrixXd& y, const MatrixXd& z) {
  Eigen::VectorXd v(y.size() + z.size());
  v.head(y.size()) = Eigen::Map<const Eigen::VectorXd>(y.data(), y.size());
  v.tail(z.size()) = Eigen::Map<const Eigen::VectorXd>(z.data(), z.size());
  return v;
}

}  // namespace

KktOperator::KktOperator(const fem::SpaceOperators& ops, const ProblemConfig& config, const TimeGrid& grid)
    : mass_(ops.mass),
      stiffness_(ops.stiffness),
      time_difference_(time_difference_matrix(grid.steps)),
      sigma_(config.effective_sigma()),
      tau_(grid.tau()),
      beta_(config.beta),
      steps_(grid.steps),
      mass_factor_(la::sparse_spd_factorize(ops.mass)),
      schur_(ops, config, grid) {}

std::pair<MatrixXd, MatrixXd> KktOperator::apply(const MatrixXd& y, const MatrixXd& z) const {
  const double sb = std::sqrt(beta_);
  const MatrixXd my = mass_ * y, mz = mass_ * z;
  MatrixXd out_y = tau_ * my + sb * (tau_ * (stiffness_ * z) + sigma_ * (mz * time_difference_));
  MatrixXd out_z = sb * (tau_ * (stiffness_ * y) + sigma_ * (my * SpMat(time_difference_.transpose()))) - tau_ * mz;
  return {std::move(out_y), std::move(out_z)};
}

LowRankVector KktOperator::apply(const LowRankVector& x) const {
  const double sb = std::sqrt(beta_);
  const Index ry = x.y.rank(), rz = x.z.rank();
  const MatrixXd my = mass_ * x.y.left, mz = mass_ * x.z.left;
  const MatrixXd ky = stiffness_ * x.y.left, kz = stiffness_ * x.z.left;
  LowRankVector out;
  // y-block: tau M Y + sqrt(beta) (tau K Z + sigma M Z C)
  out.y.left.resize(n(), ry + 2 * rz);
  out.y.right.resize(steps_, ry + 2 * rz);
  out.y.left << tau_ * my, sb * tau_ * kz, sb * sigma_ * mz;
  out.y.right << x.y.right, x.z.right, time_difference_.transpose() * x.z.right;
  // z-block: sqrt(beta) (tau K Y + sigma M Y C^T) - tau M Z
  out.z.left.resize(n(), 2 * ry + rz);
  out.z.right.resize(steps_, 2 * ry + rz);
  out.z.left << sb * tau_ * ky, sb * sigma_ * my, -tau_ * mz;
  out.z.right << x.y.right, time_difference_ * x.y.right, x.z.right;
  return out;
}

MatrixXd KktOperator::precondition_state(const MatrixXd& y) const { return mass_factor_.solve(y) / tau_; }

MatrixXd KktOperator::precondition_multiplier(const MatrixXd& z) const { return schur_.apply_inverse(z) / beta_; }

FullKktSpace::Vector FullKktSpace::apply(const Vector& x) const {
  const Index n = op_.n(), m = op_.steps();
  const auto [y, z] = op_.apply(MatrixXd(block(x, n, m, 0)), MatrixXd(block(x, n, m, 1)));
  return stack(y, z);
}

FullKktSpace::Vector FullKktSpace::precondition(const Vector& x) const {
  const Index n = op_.n(), m = op_.steps();
  return stack(op_.precondition_state(block(x, n, m, 0)), op_.precondition_multiplier(block(x, n, m, 1)));
}

FullKktSpace::Vector FullKktSpace::combine(std::initializer_list<std::pair<double, const Vector*>> terms) const {
  Vector out = Vector::Zero(terms.begin()->second->size());
  for (const auto& [c, v] : terms)
    if (c != 0.0) out += c * *v;
  return out;
}

LowRankKktSpace::Vector LowRankKktSpace::apply(const Vector& x) const {
  // Compression without tolerance: the operator image feeds the Lanczos
  // recurrence, which truncates right after.
  const LowRankVector image = op_.apply(x);
  return {lowrank_compress(image.y), lowrank_compress(image.z)};
}

LowRankKktSpace::Vector LowRankKktSpace::precondition(const Vector& x) const {
  LowRankVector out;
  out.y = LowRank(op_.precondition_state(x.y.left), x.y.right);
  out.z = lowrank_from_dense(op_.precondition_multiplier(x.z.dense()), trunc_);
  return out;
}

double LowRankKktSpace::norm(const Vector& a) const {
  const double y = la::factored_norm<double>(a.y.left, a.y.right);
  const double z = la::factored_norm<double>(a.z.left, a.z.right);
  return std::hypot(y, z);
}

LowRankKktSpace::Vector LowRankKktSpace::combine(std::initializer_list<std::pair<double, const Vector*>> terms) const {
  return lowrank_combine(std::vector<std::pair<double, const Vector*>>(terms), trunc_);
}

double LowRankKktSpace::residual_norm(const Vector& b, const Vector& x) const {
  const LowRankVector ax = op_.apply(x);
  auto block_norm = [](const LowRank& rhs, const LowRank& image) {
    MatrixXd left(rhs.rows(), rhs.rank() + image.rank()), right(rhs.cols(), rhs.rank() + image.rank());
    left << rhs.left, -image.left;
    right << rhs.right, image.right;
    return la::factored_norm<double>(left, right);
  };
  return std::hypot(block_norm(b.y, ax.y), block_norm(b.z, ax.z));
}

Eigen::VectorXd kkt_rhs(const KktOperator& op, const MatrixXd& yd) {
  if (yd.rows() != op.n() || yd.cols() != op.steps()) throw std::invalid_argument("kkt_rhs: Y_d must be n x m_T");
  return stack(op.tau() * (op.mass() * yd), MatrixXd::Zero(op.n(), op.steps()));
}

LowRankVector kkt_rhs(const KktOperator& op, const LowRank& yd) {
  if (yd.rows() != op.n() || yd.cols() != op.steps()) throw std::invalid_argument("kkt_rhs: Y_d must be n x m_T");
  return {LowRank(op.tau() * (op.mass() * yd.left), yd.right), LowRank::zero(op.n(), op.steps())};
}

}  // namespace eddy
