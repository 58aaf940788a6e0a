#pragma once

#include <utility>

#include "eddy/baselines/lowrank_vector.hpp"
#include "eddy/baselines/schur_hat.hpp"

namespace eddy {

/// The reduced optimality system in the unknowns (Y, Z = Lambda / sqrt(beta)):
///   [tau M_T         sqrt(beta) N^T] [Y]   [tau M_T Y_d]
///   [sqrt(beta) N    -tau M_T      ] [Z] = [0          ]
/// with its block diagonal preconditioner diag(tau M_T, beta S_hat). Every
/// block acts on n x m_T matrices (column k = time step k).
class KktOperator {
 public:
  KktOperator(const fem::SpaceOperators& ops, const ProblemConfig& config, const TimeGrid& grid);

  std::pair<Eigen::MatrixXd, Eigen::MatrixXd> apply(const Eigen::MatrixXd& y, const Eigen::MatrixXd& z) const;
  /// Exact image in factored form (ranks add up; no truncation).
  LowRankVector apply(const LowRankVector& x) const;

  Eigen::MatrixXd precondition_state(const Eigen::MatrixXd& y) const;  // (tau M)^{-1}
  Eigen::MatrixXd precondition_multiplier(const Eigen::MatrixXd& z) const;  // (beta S_hat)^{-1}

  Index n() const { return mass_.rows(); }
  int steps() const { return steps_; }
  double beta() const { return beta_; }
  double tau() const { return tau_; }
  const SpMat& mass() const { return mass_; }

 private:
  SpMat mass_;
  SpMat stiffness_;
  SpMat time_difference_;  // C
  double sigma_;
  double tau_;
  double beta_;
  int steps_;
  la::SparseFactorization mass_factor_;
  SchurHat schur_;
};

/// Full vectors vec([Y, Z]) of length 2 n m_T.
class FullKktSpace {
 public:
  using Vector = Eigen::VectorXd;

  explicit FullKktSpace(const KktOperator& op) : op_(op) {}

  Vector zero(const Vector& like) const { return Vector::Zero(like.size()); }
  Vector apply(const Vector& x) const;
  Vector precondition(const Vector& x) const;
  double dot(const Vector& a, const Vector& b) const { return a.dot(b); }
  double norm(const Vector& a) const { return a.norm(); }
  Vector combine(std::initializer_list<std::pair<double, const Vector*>> terms) const;
  double residual_norm(const Vector& b, const Vector& x) const { return (b - apply(x)).norm(); }

 private:
  const KktOperator& op_;
};

/// Factored iterates, recompressed after every linear combination.
class LowRankKktSpace {
 public:
  using Vector = LowRankVector;

  LowRankKktSpace(const KktOperator& op, Truncation trunc) : op_(op), trunc_(trunc) {}

  Vector zero(const Vector&) const { return LowRankVector::zero(op_.n(), op_.steps()); }
  Vector apply(const Vector& x) const;
  Vector precondition(const Vector& x) const;
  double dot(const Vector& a, const Vector& b) const { return lowrank_dot(a, b); }
  double norm(const Vector& a) const;
  Vector combine(std::initializer_list<std::pair<double, const Vector*>> terms) const;
  double residual_norm(const Vector& b, const Vector& x) const;

 private:
  const KktOperator& op_;
  Truncation trunc_;
};

/// Right-hand side [tau M Y_d; 0] in both representations.
Eigen::VectorXd kkt_rhs(const KktOperator& op, const Eigen::MatrixXd& yd);
LowRankVector kkt_rhs(const KktOperator& op, const LowRank& yd);

}  // namespace eddy
