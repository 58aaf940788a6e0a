#include "eddy/reformulate/sylvester_problem.hpp"

#include <cmath>
#include <iostream>
#include <vector>

namespace eddy {

SpMat time_difference_matrix(int steps) {
  if (steps < 1) throw ConfigError("time_difference_matrix: steps must be >= 1");
  std::vector<Triplet> t;
  t.reserve(2 * steps);
  for (int i = 0; i < steps; ++i) {
    t.emplace_back(i, i, 1.0);
    if (i > 0) t.emplace_back(i, i - 1, -1.0);
  }
  SpMat c(steps, steps);
  c.setFromTriplets(t.begin(), t.end());
  return c;
}

SpMat build_B(double sigma, double tau, double beta, int steps) {
  if (!(tau > 0.0)) throw ConfigError("build_B: tau must be positive");
  if (!(beta > 0.0)) throw ConfigError("build_B: beta must be positive");
  if (steps < 1) throw ConfigError("build_B: steps must be >= 1");
  const double a = sigma / tau;
  const double b = 1.0 / std::sqrt(beta);
  std::vector<Triplet> t;
  t.reserve(6 * steps);
  for (int i = 0; i < steps; ++i) {
    t.emplace_back(i, i, a);                  // (sigma/tau) C^T
    if (i + 1 < steps) t.emplace_back(i, i + 1, -a);
    t.emplace_back(steps + i, steps + i, a);  // (sigma/tau) C
    if (i > 0) t.emplace_back(steps + i, steps + i - 1, -a);
    t.emplace_back(i, steps + i, b);
    t.emplace_back(steps + i, i, -b);
  }
  SpMat out(2 * steps, 2 * steps);
  out.setFromTriplets(t.begin(), t.end());
  out.prune(0.0);
  out.makeCompressed();
  return out;
}

LowRank build_rhs(const Eigen::MatrixXd& y1, const Eigen::MatrixXd& y2, double beta) {
  if (y1.cols() != y2.cols()) throw std::invalid_argument("build_rhs: Y1 and Y2 have different ranks");
  if (!(beta > 0.0)) throw ConfigError("build_rhs: beta must be positive");
  Eigen::MatrixXd r2 = Eigen::MatrixXd::Zero(2 * y2.rows(), y2.cols());
  r2.bottomRows(y2.rows()) = y2;
  return LowRank(y1 / std::sqrt(beta), std::move(r2));
}

namespace {

la::SparseFactorization factor_shifted(const SpMat& k, const SpMat& m, double s) {
  try {
    return la::sparse_spd_factorize(SpMat(k + s * m));
  } catch (const la::FactorizationError&) {
    throw la::FactorizationError("K + sM is not SPD for shift s = " + std::to_string(s) +
                                 "; increase the shift or the elliptic regularization");
  }
}

}  // namespace

SpaceOperator::SpaceOperator(const fem::SpaceOperators& ops, double shift)
    : mass_(ops.mass),
      stiffness_(ops.stiffness),
      shift_(shift),
      mass_factor_(la::sparse_spd_factorize(ops.mass)),
      shifted_factor_(factor_shifted(ops.stiffness, ops.mass, shift)) {}

Eigen::MatrixXd SpaceOperator::apply(const Eigen::MatrixXd& v) const {
  Eigen::MatrixXd out = mass_factor_.solve(Eigen::MatrixXd(stiffness_ * v));
  if (shift_ != 0.0) out += shift_ * v;
  return out;
}

Eigen::MatrixXd SpaceOperator::apply_inverse(const Eigen::MatrixXd& v) const {
  return shifted_factor_.solve(Eigen::MatrixXd(mass_ * v));
}

SylvesterProblem::SylvesterProblem(SpaceOperator a, SpMat b_shifted, LowRank rhs)
    : a_(std::move(a)),
      b_(std::move(b_shifted)),
      bt_(b_.transpose()),
      b_factor_(la::sparse_lu_factorize(b_)),
      rhs_(std::move(rhs)) {
  if (rhs_.rows() != a_.n() || rhs_.cols() != b_.rows())
    throw std::invalid_argument("SylvesterProblem: right-hand side factors are not conformal");
}

Eigen::MatrixXd SylvesterProblem::apply_Bt(const Eigen::MatrixXd& w) const { return bt_ * w; }

Eigen::MatrixXd SylvesterProblem::apply_Bt_inverse(const Eigen::MatrixXd& w) const {
  return b_factor_.solve_transpose(w);
}

SylvesterProblem make_sylvester_problem(const fem::SpaceOperators& ops, const ProblemConfig& config,
                                        const TimeGrid& grid, const LowRank& yd) {
  config.validate();
  grid.validate();
  if (yd.rows() != ops.n() || yd.cols() != grid.steps)
    throw std::invalid_argument("make_sylvester_problem: desired state has the wrong shape");
  if (config.beta < 1e-12)
    std::cerr << "warning: beta = " << config.beta << " < 1e-12; the reformulated problem may be badly scaled\n";
  const double s = config.effective_shift();
  SpMat b = build_B(config.effective_sigma(), grid.tau(), config.beta, grid.steps);
  if (s != 0.0) {
    SpMat id(b.rows(), b.cols());
    id.setIdentity();
    b -= s * id;
  }
  return SylvesterProblem(SpaceOperator(ops, s), std::move(b), build_rhs(yd.left, yd.right, config.beta));
}

SolutionFactors extract_solution(const LowRank& x, double beta) {
  if (x.cols() % 2 != 0) throw std::invalid_argument("extract_solution: X must have an even number of columns");
  const Index steps = x.cols() / 2;
  const double sb = std::sqrt(beta);
  LowRank state(x.left, x.right.topRows(steps));
  LowRank multiplier(x.left, sb * x.right.bottomRows(steps));
  LowRank control(x.left, (sb / beta) * x.right.bottomRows(steps));
  return {std::move(state), std::move(control), std::move(multiplier)};
}

}  // namespace eddy
