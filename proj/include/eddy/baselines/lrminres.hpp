#pragma once

#include <functional>

#include "eddy/baselines/kkt_space.hpp"
#include "eddy/baselines/minres.hpp"
#include "eddy/solve_report.hpp"

namespace eddy {

struct LrminresOptions {
  double tol = 1e-6;
  double trunc_tol = 1e-10;  // relative Frobenius tail per block
  Index k_max = 50;
  int max_iterations = 500;
};

struct LrminresResult {
  LowRankVector x;  // Y and Z = Lambda / sqrt(beta)
  SolveReport report;
};

/// Preconditioned MINRES on the reduced optimality system with factored
/// iterates; Y_d enters in factored form.
LrminresResult lrminres_solve(const fem::SpaceOperators& ops, const ProblemConfig& config, const TimeGrid& grid,
                              const LowRank& yd, const LrminresOptions& options = {},
                              const std::function<void(int, const LowRankVector&)>& observer = {});

/// The same iteration on full vectors vec([Y, Z]).
MinresOutcome<Eigen::VectorXd> full_minres_solve(const fem::SpaceOperators& ops, const ProblemConfig& config,
                                                 const TimeGrid& grid, const Eigen::MatrixXd& yd,
                                                 const MinresControl& control,
                                                 const std::function<void(int, const Eigen::VectorXd&)>& observer = {});

/// Factored [Y, Z] as one n x 2m_T matrix, for rank reporting and comparison
/// with the Sylvester unknown X = [Y, Lambda / sqrt(beta)].
LowRank as_sylvester_unknown(const LowRankVector& x);

}  // namespace eddy
