#pragma once

#include "eddy/fem/assembly.hpp"
#include "eddy/fem/config.hpp"

namespace eddy {

/// Largest number of dense matrix entries the oracles will allocate.
inline constexpr double kDenseEntryGuard = 4e6;

class DenseGuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Dense all-at-once optimality system (oracle use only).
struct KktSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
  Index n = 0;
  int steps = 0;
  int blocks = 2;  // 2: reduced (Y, Lambda/sqrt(beta)); 3: full (Y, U, Lambda)
};

/// Reduced symmetric system [[tau M, sqrt(beta) N^T], [sqrt(beta) N, -tau M]].
KktSystem assemble_kkt_dense(const fem::SpaceOperators& ops, const ProblemConfig& config, const TimeGrid& grid,
                             const Eigen::MatrixXd& yd);

/// Full system in (Y, U, Lambda).
KktSystem assemble_kkt3_dense(const fem::SpaceOperators& ops, const ProblemConfig& config, const TimeGrid& grid,
                              const Eigen::MatrixXd& yd);

/// n x m_T blocks of a KKT solution.
struct KktSolution {
  Eigen::MatrixXd state;
  Eigen::MatrixXd control;
  Eigen::MatrixXd multiplier;
};

Eigen::VectorXd solve_dense(const KktSystem& system);

/// Interprets a solution vector of either system form.
KktSolution unpack_kkt_solution(const KktSystem& system, const Eigen::VectorXd& x, double beta);

/// Dense block-lower-bidiagonal N_sigma = I (x) tau K + C (x) sigma M.
Eigen::MatrixXd dense_n_sigma(const fem::SpaceOperators& ops, double sigma, double tau, int steps);

/// Kronecker form of the split system: (P1 (x) M + P2 (x) K) vec(X) = vec([tau M Y_d, 0]).
KktSystem assemble_split_kronecker(const fem::SpaceOperators& ops, const ProblemConfig& config, const TimeGrid& grid,
                                   const Eigen::MatrixXd& yd);

/// Dense solve of A X + X B = R through (I (x) A + B^T (x) I) vec(X) = vec(R).
Eigen::MatrixXd solve_sylvester_kronecker(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                          const Eigen::MatrixXd& r);

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace eddy
