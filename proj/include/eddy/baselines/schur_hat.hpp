#pragma once

#include "eddy/fem/assembly.hpp"
#include "eddy/fem/config.hpp"
#include "eddy/la/sparse_factorization.hpp"

namespace eddy {

/// Matching-type Schur complement approximation
///   S_hat = (1/tau) (N + c M_T) M_T^{-1} (N + c M_T)^T,  c = tau / sqrt(beta),
/// with M_T = I (x) M and N = I (x) tau K + C (x) sigma M. Both factors are
/// block bidiagonal in time with the same diagonal block
///   D = sigma M + tau K + c M,
/// so S_hat^{-1} costs two block substitutions and one Cholesky of D.
class SchurHat {
 public:
  SchurHat(const fem::SpaceOperators& ops, const ProblemConfig& config, const TimeGrid& grid);

  /// S_hat^{-1} V for V of size n x m_T (column k is time step k).
  Eigen::MatrixXd apply_inverse(const Eigen::MatrixXd& v) const;
  /// (N + c M_T)^{-1} V by forward substitution in time.
  Eigen::MatrixXd solve_lower(const Eigen::MatrixXd& v) const;
  /// (N + c M_T)^{-T} V by backward substitution in time.
  Eigen::MatrixXd solve_upper(const Eigen::MatrixXd& v) const;

  double tau() const { return tau_; }
  double coupling() const { return coupling_; }
  int steps() const { return steps_; }
  Index n() const { return mass_.rows(); }

 private:
  SpMat mass_;
  SpMat coupling_mass_;  // sigma M
  double tau_;
  double coupling_;      // tau / sqrt(beta)
  int steps_;
  la::SparseFactorization diagonal_;
};

/// S_hat^{-1} v with v = vec(V), V of size n x m_T.
Eigen::VectorXd apply_schur_hat_inv(const Eigen::VectorXd& v, const fem::SpaceOperators& ops,
                                    const ProblemConfig& config, const TimeGrid& grid);

}  // namespace eddy
