#include "eddy/baselines/lrminres.hpp"

#include <chrono>

#include "eddy/la/truncated_svd.hpp"

namespace eddy {

LowRank as_sylvester_unknown(const LowRankVector& x) {
  const Index m = x.steps(), ry = x.y.rank(), rz = x.z.rank();
  LowRank out(Eigen::MatrixXd(x.n(), ry + rz), Eigen::MatrixXd::Zero(2 * m, ry + rz));
  out.left << x.y.left, x.z.left;
  out.right.topLeftCorner(m, ry) = x.y.right;
  out.right.bottomRightCorner(m, rz) = x.z.right;
  return out;
}

LrminresResult lrminres_solve(const fem::SpaceOperators& ops, const ProblemConfig& config, const TimeGrid& grid,
                              const LowRank& yd, const LrminresOptions& options,
                              const std::function<void(int, const LowRankVector&)>& observer) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("lrminres: tol must be positive");
  if (options.trunc_tol < 0.0) throw std::invalid_argument("lrminres: trunc_tol must be non-negative");
  if (options.k_max < 1) throw std::invalid_argument("lrminres: k_max must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  const KktOperator op(ops, config, grid);
  const LowRankKktSpace space(op, Truncation{options.trunc_tol, options.k_max});
  const LowRankVector b = kkt_rhs(op, yd);

  const auto outcome = preconditioned_minres(space, b, MinresControl{options.tol, options.max_iterations}, observer);

  LrminresResult out;
  out.x = outcome.x;
  out.report.iterations = outcome.iterations;
  out.report.mean_iterations = outcome.iterations;
  out.report.relative_residual = outcome.relative_residual;
  out.report.converged = outcome.converged;
  out.report.zero_rhs = space.norm(b) == 0.0;
  out.report.residual_history = outcome.residual_history;
  out.report.rank = la::truncated_svd(as_sylvester_unknown(out.x), config.trunc_tol).rank();
  out.report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

MinresOutcome<Eigen::VectorXd> full_minres_solve(const fem::SpaceOperators& ops, const ProblemConfig& config,
                                                 const TimeGrid& grid, const Eigen::MatrixXd& yd,
                                                 const MinresControl& control,
                                                 const std::function<void(int, const Eigen::VectorXd&)>& observer) {
  const KktOperator op(ops, config, grid);
  const FullKktSpace space(op);
  return preconditioned_minres(space, kkt_rhs(op, yd), control, observer);
}

}  // namespace eddy
