#pragma once

#include <stdexcept>
#include <vector>

#include "eddy/reformulate/sylvester_problem.hpp"
#include "eddy/solve_report.hpp"

namespace eddy {

/// Both extended Krylov spaces stopped growing before convergence.
class KpikStagnation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Columns of the newest basis block: the part to be multiplied by the
/// operator next and the part to be multiplied by its inverse.
struct BlockSplit {
  Index offset = 0;
  Index forward = 0;
  Index inverse = 0;

  Index width() const { return forward + inverse; }
};

struct KpikState {
  Eigen::MatrixXd u;    // n x p, orthonormal
  Eigen::MatrixXd au;   // A U
  Eigen::MatrixXd w;    // 2m_T x q, orthonormal
  Eigen::MatrixXd btw;  // B^T W
  Eigen::MatrixXd ta;   // U^T A U
  Eigen::MatrixXd tb;   // W^T B^T W
  Eigen::MatrixXd r1r;  // U^T R1
  Eigen::MatrixXd r2r;  // W^T R2
  Eigen::MatrixXd y;    // projected solution, p x q
  BlockSplit left_block;
  BlockSplit right_block;
  bool left_closed = false;
  bool right_closed = false;
  int sweeps = 0;
  double rhs_norm = 0.0;
  std::vector<double> residual_history;

  Index p() const { return u.cols(); }
  Index q() const { return w.cols(); }
  /// Current iterate X ~ (U Y) W^T.
  LowRank iterate() const { return LowRank(u * y, w); }
};

enum class ResidualEvaluation {
  projected,  // from the out-of-space components of the newest blocks (cheap)
  factored,   // factored_residual on the full iterate every sweep
};

struct SkpikOptions {
  double tol = 1e-6;
  double trunc_tol = 1e-10;
  int max_sweeps = 500;
  ResidualEvaluation residual = ResidualEvaluation::factored;
};


struct SkpikResult {
  LowRank x;
  SolveReport report;
};

/// Initial bases from [R1, A^{-1} R1] and [R2, B^{-T} R2] and their projections.
KpikState skpik_init(const SylvesterProblem& problem);

/// One sweep: extend both bases (except on the first call), solve the
/// projected equation and record the relative residual.
void skpik_sweep(KpikState& state, const SylvesterProblem& problem,
                 ResidualEvaluation mode = ResidualEvaluation::factored);

/// ||A X1 X2^T + X1 X2^T B - R1 R2^T||_F / ||R1 R2^T||_F from thin QRs of the
/// slim factors (absolute norm when the right-hand side vanishes).
double factored_residual(const Eigen::MatrixXd& x1, const Eigen::MatrixXd& x2, const SylvesterProblem& problem);

/// Runs sweeps until the residual drops below tol, then compresses the
/// iterate with a truncated SVD.
SkpikResult skpik_solve(const SylvesterProblem& problem, const SkpikOptions& options = {});

}  // namespace eddy
