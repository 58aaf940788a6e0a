#include "eddy/baselines/fminres.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "eddy/baselines/minres.hpp"
#include "eddy/la/sparse_factorization.hpp"

namespace eddy {

namespace {

using Eigen::VectorXd;

class StepSpace {
 public:
  using Vector = VectorXd;

  StepSpace(const fem::SpaceOperators& ops, const ProblemConfig& config, double tau)
      : mass_(ops.mass),
        coupling_(config.effective_sigma() * ops.mass + tau * ops.stiffness),
        tau_(tau),
        beta_(config.beta),
        mass_factor_(la::sparse_spd_factorize(ops.mass)),
        shifted_factor_(la::sparse_spd_factorize(coupling_ + (tau / std::sqrt(config.beta)) * ops.mass)) {}

  Index n() const { return mass_.rows(); }
  const SpMat& mass() const { return mass_; }

  Vector zero(const Vector& like) const { return Vector::Zero(like.size()); }
  double dot(const Vector& a, const Vector& b) const { return a.dot(b); }
  double norm(const Vector& a) const { return a.norm(); }
  double residual_norm(const Vector& b, const Vector& x) const { return (b - apply(x)).norm(); }

  Vector combine(std::initializer_list<std::pair<double, const Vector*>> terms) const {
    Vector out = Vector::Zero(terms.begin()->second->size());
    for (const auto& [c, v] : terms)
      if (c != 0.0) out += c * *v;
    return out;
  }

  Vector apply(const Vector& x) const {
    const Index n = this->n();
    const auto y = x.segment(0, n), u = x.segment(n, n), l = x.segment(2 * n, n);
    Vector out(3 * n);
    out.segment(0, n) = tau_ * (mass_ * y) + coupling_ * l;
    out.segment(n, n) = tau_ * beta_ * (mass_ * u) - tau_ * (mass_ * l);
    out.segment(2 * n, n) = coupling_ * y - tau_ * (mass_ * u);
    return out;
  }

  Vector precondition(const Vector& x) const {
    const Index n = this->n();
    Vector out(3 * n);
    out.segment(0, n) = mass_factor_.solve(VectorXd(x.segment(0, n))) / tau_;
    out.segment(n, n) = mass_factor_.solve(VectorXd(x.segment(n, n))) / (tau_ * beta_);
    const VectorXd inner = shifted_factor_.solve(VectorXd(x.segment(2 * n, n)));
    out.segment(2 * n, n) = tau_ * shifted_factor_.solve(VectorXd(mass_ * inner));
    return out;
  }

 private:
  SpMat mass_;
  SpMat coupling_;  // N = sigma M + tau K (symmetric)
  double tau_;
  double beta_;
  la::SparseFactorization mass_factor_;
  la::SparseFactorization shifted_factor_;
};

}  // namespace

FminresStepError::FminresStepError(int step, double residual)
    : std::runtime_error("fminres: time step " + std::to_string(step) + " did not converge (relative residual " +
                         std::to_string(residual) + ")"),
      step_(step),
      residual_(residual) {}

double average_iterations(const std::vector<int>& per_step) {
  if (per_step.empty()) return 0.0;
  return static_cast<double>(std::accumulate(per_step.begin(), per_step.end(), 0L)) / per_step.size();
}

FminresResult fminres_solve(const fem::SpaceOperators& ops, const ProblemConfig& config, const TimeGrid& grid,
                            const Eigen::MatrixXd& yd, double tol, int max_iterations) {
  config.validate();
  grid.validate();
  if (!(tol > 0.0)) throw std::invalid_argument("fminres: tol must be positive");
  const Index n = ops.n();
  if (yd.rows() != n || yd.cols() != grid.steps) throw std::invalid_argument("fminres: Y_d must be n x m_T");
  const auto start = std::chrono::steady_clock::now();
  const double tau = grid.tau();
  const double sigma = config.effective_sigma();
  const StepSpace space(ops, config, tau);

  FminresResult out;
  out.state.setZero(n, grid.steps);
  out.control.setZero(n, grid.steps);
  out.multiplier.setZero(n, grid.steps);
  double worst = 0.0;
  VectorXd previous = VectorXd::Zero(n);
  for (int m = 0; m < grid.steps; ++m) {
    VectorXd b = VectorXd::Zero(3 * n);
    b.segment(0, n) = tau * (space.mass() * yd.col(m));
    b.segment(2 * n, n) = sigma * (space.mass() * previous);
    const auto step = preconditioned_minres(space, b, MinresControl{tol, max_iterations});
    if (!step.converged) throw FminresStepError(m + 1, step.relative_residual);
    out.step_iterations.push_back(step.iterations);
    worst = std::max(worst, step.relative_residual);
    out.state.col(m) = step.x.segment(0, n);
    out.control.col(m) = step.x.segment(n, n);
    out.multiplier.col(m) = step.x.segment(2 * n, n);
    previous = out.state.col(m);
  }
  out.report.mean_iterations = average_iterations(out.step_iterations);
  out.report.iterations = std::accumulate(out.step_iterations.begin(), out.step_iterations.end(), 0);
  out.report.relative_residual = worst;
  out.report.converged = true;
  out.report.zero_rhs = yd.isZero(0.0);
  Eigen::MatrixXd x(n, 2 * grid.steps);
  x << out.state, out.multiplier / std::sqrt(config.beta);
  const Eigen::VectorXd sv = Eigen::BDCSVD<Eigen::MatrixXd>(x).singularValues();
  out.report.rank = (sv.array() >= config.trunc_tol && sv.array() > 0.0).count();
  out.report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace eddy
