#pragma once

#include <stdexcept>
#include <vector>

#include "eddy/fem/assembly.hpp"
#include "eddy/fem/config.hpp"
#include "eddy/solve_report.hpp"

namespace eddy {

/// A time step's saddle system did not reach the tolerance.
class FminresStepError : public std::runtime_error {
 public:
  FminresStepError(int step, double residual);
  int step() const { return step_; }
  double residual() const { return residual_; }

 private:
  int step_;
  double residual_;
};

struct FminresResult {
  Eigen::MatrixXd state;       // n x m_T
  Eigen::MatrixXd control;     // n x m_T
  Eigen::MatrixXd multiplier;  // n x m_T
  std::vector<int> step_iterations;
  SolveReport report;
};

/// Sum of per-step iteration counts divided by the number of steps.
double average_iterations(const std::vector<int>& per_step);

/// Steps forward in time, solving at step m
///   [tau M   0         N^T ] [y_m     ]   [tau M y_d,m       ]
///   [0       tau beta M -tau M] [u_m     ] = [0                 ]
///   [N       -tau M    0   ] [lambda_m]   [sigma M y_{m-1}   ]
/// with N = sigma M + tau K by MINRES preconditioned with
/// diag(tau M, tau beta M, S_step), S_step = (1/tau)(N + cM) M^{-1} (N + cM),
/// c = tau / sqrt(beta). Throws FminresStepError on the first failing step.
FminresResult fminres_solve(const fem::SpaceOperators& ops, const ProblemConfig& config, const TimeGrid& grid,
                            const Eigen::MatrixXd& yd, double tol, int max_iterations = 500);

}  // namespace eddy
