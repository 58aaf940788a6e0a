#pragma once

#include "eddy/fem/assembly.hpp"
#include "eddy/fem/config.hpp"
#include "eddy/la/sparse_factorization.hpp"

namespace eddy {

/// Lower bidiagonal time-difference matrix (1 on the diagonal, -1 below).
SpMat time_difference_matrix(int steps);

/// B = [[(sigma/tau) C^T, I/sqrt(beta)], [-I/sqrt(beta), (sigma/tau) C]], size 2 m_T.
SpMat build_B(double sigma, double tau, double beta, int steps);

/// R1 = Y1 / sqrt(beta), R2 = [0; Y2], so that R1 R2^T = [0, Y_d / sqrt(beta)].
LowRank build_rhs(const Eigen::MatrixXd& y1, const Eigen::MatrixXd& y2, double beta);

/// Access to the (shifted) left coefficient A + sI = M^{-1}(K + sM) without
/// forming it.
class SpaceOperator {
 public:
  SpaceOperator(const fem::SpaceOperators& ops, double shift);

  /// v -> M^{-1} K v + s v
  Eigen::MatrixXd apply(const Eigen::MatrixXd& v) const;
  /// v -> (K + sM)^{-1} M v
  Eigen::MatrixXd apply_inverse(const Eigen::MatrixXd& v) const;

  Index n() const { return mass_.rows(); }
  double shift() const { return shift_; }
  const SpMat& mass() const { return mass_; }
  const SpMat& stiffness() const { return stiffness_; }

 private:
  SpMat mass_;
  SpMat stiffness_;
  double shift_;
  la::SparseFactorization mass_factor_;
  la::SparseFactorization shifted_factor_;
};

/// (A + sI) X + X (B - sI) = R1 R2^T, with everything needed to build
/// extended Krylov spaces on both sides.
class SylvesterProblem {
 public:
  SylvesterProblem(SpaceOperator a, SpMat b_shifted, LowRank rhs);

  const SpaceOperator& a() const { return a_; }
  /// Shifted B.
  const SpMat& b() const { return b_; }
  const Eigen::MatrixXd& r1() const { return rhs_.left; }
  const Eigen::MatrixXd& r2() const { return rhs_.right; }
  const LowRank& rhs() const { return rhs_; }
  double shift() const { return a_.shift(); }

  Eigen::MatrixXd apply_A(const Eigen::MatrixXd& v) const { return a_.apply(v); }
  Eigen::MatrixXd apply_A_inverse(const Eigen::MatrixXd& v) const { return a_.apply_inverse(v); }
  Eigen::MatrixXd apply_Bt(const Eigen::MatrixXd& w) const;
  Eigen::MatrixXd apply_Bt_inverse(const Eigen::MatrixXd& w) const;

  Index n() const { return a_.n(); }
  Index m() const { return b_.rows(); }

 private:
  SpaceOperator a_;
  SpMat b_;
  SpMat bt_;
  la::SparseFactorization b_factor_;
  LowRank rhs_;
};

/// Assembles the shifted Sylvester problem from operators, parameters and a
/// low-rank desired state (Y_d ~ Y1 Y2^T, Y2 having m_T rows).
SylvesterProblem make_sylvester_problem(const fem::SpaceOperators& ops, const ProblemConfig& config,
                                        const TimeGrid& grid, const LowRank& yd);

/// Views of the optimal state, control and multiplier in factored form.
struct SolutionFactors {
  LowRank state;       // Y
  LowRank control;     // U = Lambda / beta
  LowRank multiplier;  // Lambda
};

/// Splits X = [Y, Lambda/sqrt(beta)] by slicing and scaling the right factor only.
SolutionFactors extract_solution(const LowRank& x, double beta);

}  // namespace eddy
