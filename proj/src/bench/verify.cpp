#include "eddy/bench/verify.hpp"

#include <cmath>

#include "eddy/baselines/lrminres.hpp"
#include "eddy/fem/desired_state.hpp"
#include "eddy/fem/mesh.hpp"
#include "eddy/reformulate/kkt.hpp"
#include "eddy/reformulate/sylvester_problem.hpp"
#include "eddy/skpik/skpik.hpp"

namespace eddy::bench {

namespace {

using Eigen::MatrixXd;

double rel(const MatrixXd& a, const MatrixXd& ref) {
  const double d = (a - ref).norm(), r = ref.norm();
  return r > 0.0 ? d / r : d;
}

}  // namespace

bool VerifyReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed()) return false;
  return !checks.empty();
}

VerifyReport run_verify(const VerifyOptions& options) {
  if (options.steps < 1) throw ConfigError("--mT must be at least 1");
  ProblemConfig config;
  config.sigma = options.sigma;
  config.beta = options.beta;
  TimeGrid grid;
  grid.steps = options.steps;

  fem::SpaceOperators ops;
  MatrixXd yd;
  if (options.n == 1) {
    // M = [1], K = [2], sigma = beta = 1, Y_d = 1 at every step
    config.sigma = 1.0;
    config.beta = 1.0;
    ops.mass = SpMat(1, 1);
    ops.mass.insert(0, 0) = 1.0;
    ops.stiffness = SpMat(1, 1);
    ops.stiffness.insert(0, 0) = 2.0;
    yd = MatrixXd::Ones(1, options.steps);
  } else {
    const int cells = static_cast<int>(std::lround(std::sqrt(double(options.n)))) - 1;
    if (cells < 1 || Index(cells + 1) * (cells + 1) != options.n)
      throw ConfigError("--n must be 1 or a square (N+1)^2 with N >= 1");
    const fem::Mesh2D mesh = fem::build_mesh(cells);
    ops = fem::make_space_operators(mesh, config);
    yd = fem::sample_desired_state(fem::DesiredExample::ex1, mesh, grid);
  }
  config.validate();

  VerifyReport report;
  report.n = ops.n();
  report.steps = grid.steps;
  auto check = [&](std::string name, double value) { report.checks.push_back({std::move(name), value, options.limit}); };

  const KktSystem kkt = assemble_kkt_dense(ops, config, grid, yd);
  const KktSolution ref = unpack_kkt_solution(kkt, solve_dense(kkt), config.beta);

  // skpik against the all-at-once solve
  LowRank yd_lr = fem::lowrank_desired(yd, 1e-14);
  if (options.flip_sign) yd_lr.left = -yd_lr.left;
  const SylvesterProblem sylvester = make_sylvester_problem(ops, config, grid, yd_lr);
  SkpikOptions so;
  so.tol = 1e-10;
  so.trunc_tol = 1e-12;
  const SkpikResult sk = skpik_solve(sylvester, so);
  const SolutionFactors parts = extract_solution(sk.x, config.beta);
  check("skpik converged (residual)", sk.report.converged ? sk.report.relative_residual : INFINITY);
  check("skpik state error", rel(parts.state.dense(), ref.state));
  check("skpik control error", rel(parts.control.dense(), ref.control));
  check("skpik multiplier error", rel(parts.multiplier.dense(), ref.multiplier));

  // control elimination: the three-block system gives the same optimum
  const KktSystem kkt3 = assemble_kkt3_dense(ops, config, grid, yd);
  const KktSolution full = unpack_kkt_solution(kkt3, solve_dense(kkt3), config.beta);
  check("elimination state", rel(ref.state, full.state));
  check("elimination control", rel(ref.control, full.control));
  check("elimination multiplier", rel(ref.multiplier, full.multiplier));

  // split Kronecker form vs the reduced matrix, and the Sylvester solution in it
  const KktSystem split = assemble_split_kronecker(ops, config, grid, yd);
  check("split form matrix", rel(split.matrix, kkt.matrix));
  const MatrixXd m(ops.mass), k(ops.stiffness);
  const MatrixXd a = m.llt().solve(k);
  const MatrixXd b(build_B(config.effective_sigma(), grid.tau(), config.beta, grid.steps));
  const LowRank rhs = build_rhs(yd_lr.left, yd_lr.right, config.beta);
  const MatrixXd x = solve_sylvester_kronecker(a, b, rhs.dense());
  check("Sylvester solution in split form", (split.matrix * x.reshaped() - split.rhs).norm() / split.rhs.norm());

  if (options.n == 1 && options.steps == 1) {
    // X (2 I + B) = [0, 1] with B = [[1, 1], [-1, 1]] gives X = (0.1, 0.3)
    MatrixXd exact(1, 2);
    exact << 0.1, 0.3;
    check("closed form", rel(sk.x.dense(), exact));
  }

  if (options.with_lrminres) {
    LrminresOptions lo;
    lo.tol = 1e-10;
    lo.trunc_tol = 1e-12;
    const LrminresResult lr = lrminres_solve(ops, config, grid, yd_lr, lo);
    check("lrminres state error", rel(lr.x.y.dense(), ref.state));
    check("lrminres multiplier error", rel(std::sqrt(config.beta) * lr.x.z.dense(), ref.multiplier));
  }
  return report;
}

}  // namespace eddy::bench
