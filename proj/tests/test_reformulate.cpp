#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "eddy/fem/assembly.hpp"
#include "eddy/fem/desired_state.hpp"
#include "eddy/fem/mesh.hpp"
#include "eddy/reformulate/kkt.hpp"
#include "eddy/reformulate/sylvester_problem.hpp"
#include "oracles.hpp"

using namespace eddy;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

MatrixXd random_matrix(std::mt19937& rng, Index r, Index c) {
  std::normal_distribution<double> d;
  MatrixXd m(r, c);
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = d(rng);
  return m;
}

SpMat diagonal(Index n, double value) {
  SpMat a(n, n);
  a.setIdentity();
  return value * a;
}

fem::SpaceOperators scalar_ops(double m, double k) { return {diagonal(1, m), diagonal(1, k)}; }

struct Instance {
  fem::SpaceOperators ops;
  ProblemConfig config;
  TimeGrid grid;
  MatrixXd yd;
};

Instance small_instance(double sigma, double beta, int steps, int cells = 4) {
  Instance in;
  in.config.sigma = sigma;
  in.config.beta = beta;
  in.grid = TimeGrid{steps, 1.0};
  const fem::Mesh2D mesh = fem::build_mesh(cells);
  in.ops = fem::make_space_operators(mesh, in.config);
  in.yd = fem::sample_desired_state(fem::DesiredExample::ex1, mesh, in.grid);
  for (int j = 0; j < steps; ++j) in.yd.col(j) *= 1.0 + 0.5 * j;
  return in;
}

// Dense coefficients of the shifted Sylvester equation, read back through the operators.
MatrixXd dense_a(const SylvesterProblem& p) { return p.apply_A(MatrixXd::Identity(p.n(), p.n())); }

MatrixXd sylvester_solution(const SylvesterProblem& p) {
  return oracle::sylvester(dense_a(p), MatrixXd(p.b()), p.rhs().dense());
}

}  // namespace

TEST(BuildB, SingleStep) {
  MatrixXd expected(2, 2);
  expected << 1, 1, -1, 1;
  EXPECT_EQ(MatrixXd(build_B(1, 1, 1, 1)), expected);
}

TEST(BuildB, TwoSteps) {
  MatrixXd expected(4, 4);
  expected << 4, -4, 0.5, 0, 0, 4, 0, 0.5, -0.5, 0, 4, 0, 0, -0.5, -4, 4;
  EXPECT_LE((MatrixXd(build_B(2, 0.5, 4, 2)) - expected).norm(), 1e-15);
}

TEST(BuildB, SymmetricPartPositiveDefinite) {
  for (int steps : {1, 5, 32, 64}) {
    const double sigma = 1.7, tau = 1.0 / steps;
    const MatrixXd b(build_B(sigma, tau, 1e-4, steps));
    const MatrixXd sym = 0.5 * (b + b.transpose());
    const MatrixXd c = oracle::difference(steps);
    MatrixXd expected = MatrixXd::Zero(2 * steps, 2 * steps);
    expected.topLeftCorner(steps, steps) = expected.bottomRightCorner(steps, steps) =
        (sigma / tau) * 0.5 * (c + c.transpose());
    EXPECT_LE((sym - expected).norm(), 1e-12 * expected.norm());
    EXPECT_GT(Eigen::SelfAdjointEigenSolver<MatrixXd>(sym).eigenvalues().minCoeff(), 0.0);
  }
}

TEST(BuildB, RejectsBadArguments) {
  EXPECT_THROW(build_B(1, 0, 1, 2), ConfigError);
  EXPECT_THROW(build_B(1, 1, 0, 2), ConfigError);
  EXPECT_THROW(build_B(1, 1, 1, 0), ConfigError);
}

TEST(BuildRhs, Example) {
  VectorXd v(3);
  v << 1, 2, 3;
  MatrixXd y2(2, 1);
  y2 << 5, 7;
  const LowRank r = build_rhs(v, y2, 4.0);
  EXPECT_EQ(r.left, MatrixXd(v / 2));
  VectorXd expected(4);
  expected << 0, 0, 5, 7;
  EXPECT_EQ(r.right, MatrixXd(expected));
}

TEST(BuildRhs, ZeroAndRandom) {
  EXPECT_EQ(build_rhs(MatrixXd(6, 0), MatrixXd(3, 0), 1.0).rank(), 0);
  std::mt19937 rng(3);
  const MatrixXd y1 = random_matrix(rng, 10, 3), y2 = random_matrix(rng, 6, 3);
  const double beta = 1e-3;
  MatrixXd expected = MatrixXd::Zero(10, 12);
  expected.rightCols(6) = y1 * y2.transpose() / std::sqrt(beta);
  EXPECT_LE((build_rhs(y1, y2, beta).dense() - expected).norm(), 1e-14 * expected.norm());
  EXPECT_THROW(build_rhs(y1, random_matrix(rng, 6, 2), beta), std::invalid_argument);
}

TEST(SpaceOperatorTest, Identity) {
  const fem::SpaceOperators ops{diagonal(4, 1), diagonal(4, 1)};
  const SpaceOperator a(ops, 0.0);
  std::mt19937 rng(1);
  const MatrixXd v = random_matrix(rng, 4, 2);
  EXPECT_LE((a.apply(v) - v).norm(), 1e-15);
  EXPECT_LE((a.apply_inverse(v) - v).norm(), 1e-15);
}

TEST(SpaceOperatorTest, ScaledShift) {
  const fem::SpaceOperators ops{diagonal(3, 2), diagonal(3, 4)};
  const SpaceOperator a(ops, 1.0);
  const MatrixXd v = MatrixXd::Constant(3, 1, 6.0);
  EXPECT_LE((a.apply(v) - 3 * v).norm(), 1e-14);
  EXPECT_LE((a.apply_inverse(v) - v / 3).norm(), 1e-14);
}

TEST(SpaceOperatorTest, CompositionIsIdentity) {
  const Instance in = small_instance(1, 1e-2, 1);
  const SpaceOperator a(in.ops, 1.0);
  ASSERT_EQ(a.n(), 25);
  std::mt19937 rng(5);
  const MatrixXd v = random_matrix(rng, 25, 3);
  EXPECT_LE((a.apply_inverse(a.apply(v)) - v).norm(), 1e-12 * v.norm());
  EXPECT_LE((a.apply(a.apply_inverse(v)) - v).norm(), 1e-12 * v.norm());
}

TEST(SpaceOperatorTest, IndefiniteShiftRejected) {
  const fem::SpaceOperators ops{diagonal(2, 1), diagonal(2, 0)};
  EXPECT_THROW(SpaceOperator(ops, 0.0), la::FactorizationError);
}

TEST(Kkt, ScalarExample) {
  ProblemConfig config;
  config.sigma = 1;
  config.beta = 1;
  const KktSystem sys = assemble_kkt_dense(scalar_ops(1, 1), config, TimeGrid{1, 1.0}, MatrixXd::Ones(1, 1));
  MatrixXd expected(2, 2);
  expected << 1, 2, 2, -1;
  EXPECT_EQ(sys.matrix, expected);
  EXPECT_EQ(sys.rhs, VectorXd::Unit(2, 0));
}

TEST(Kkt, SymmetricWithMassRhs) {
  const Instance in = small_instance(2, 1e-3, 3);
  const KktSystem sys = assemble_kkt_dense(in.ops, in.config, in.grid, in.yd);
  EXPECT_EQ(sys.matrix, sys.matrix.transpose());
  const double tau = in.grid.tau();
  const MatrixXd expected_top = tau * MatrixXd(in.ops.mass) * in.yd;
  EXPECT_LE((sys.rhs.head(in.yd.size()) - Eigen::Map<const VectorXd>(expected_top.data(), expected_top.size())).norm(),
            1e-15 * expected_top.norm());
  EXPECT_EQ(sys.rhs.tail(in.yd.size()).norm(), 0.0);
}

TEST(Kkt, ReducedAndFullSolutionsMatchOracle) {
  const Instance in = small_instance(1.5, 1e-2, 3);
  const double tau = in.grid.tau();
  const auto opt = oracle::kkt_optimum(MatrixXd(in.ops.mass), MatrixXd(in.ops.stiffness), 1.5, 1e-2, tau, in.yd);
  for (const KktSystem& sys : {assemble_kkt_dense(in.ops, in.config, in.grid, in.yd),
                               assemble_kkt3_dense(in.ops, in.config, in.grid, in.yd)}) {
    const KktSolution sol = unpack_kkt_solution(sys, solve_dense(sys), in.config.beta);
    EXPECT_LE(oracle::rel(sol.state, opt.state), 1e-10);
    EXPECT_LE(oracle::rel(sol.control, opt.control), 1e-10);
    EXPECT_LE(oracle::rel(sol.multiplier, opt.multiplier), 1e-10);
  }
}

TEST(Kkt, SizeGuard) {
  const fem::Mesh2D mesh = fem::build_mesh(20);
  ProblemConfig config;
  const auto ops = fem::make_space_operators(mesh, config);
  EXPECT_THROW(assemble_kkt_dense(ops, config, TimeGrid{8, 1.0}, MatrixXd::Zero(ops.n(), 8)), DenseGuardError);
}

TEST(Sylvester, SolutionMapsToOptimum) {
  for (double sigma : {1.0, 1e-2}) {
    const Instance in = small_instance(sigma, 1e-4, 4);
    const SylvesterProblem p =
        make_sylvester_problem(in.ops, in.config, in.grid, fem::lowrank_desired(in.yd, 1e-14));
    const MatrixXd x = sylvester_solution(p);
    const auto opt = oracle::kkt_optimum(MatrixXd(in.ops.mass), MatrixXd(in.ops.stiffness), sigma, 1e-4,
                                         in.grid.tau(), in.yd);
    EXPECT_LE(oracle::rel(x.leftCols(4), opt.state), 1e-10);
    EXPECT_LE(oracle::rel(std::sqrt(1e-4) * x.rightCols(4), opt.multiplier), 1e-10);
  }
}

TEST(Sylvester, ScalarExample) {
  ProblemConfig config;
  config.sigma = 1;
  config.beta = 1;
  config.shift = 0.0;
  const SylvesterProblem p =
      make_sylvester_problem(scalar_ops(1, 2), config, TimeGrid{1, 1.0}, LowRank(MatrixXd::Ones(1, 1), MatrixXd::Ones(1, 1)));
  const MatrixXd x = sylvester_solution(p);
  EXPECT_NEAR(x(0, 0), 0.1, 1e-14);
  EXPECT_NEAR(x(0, 1), 0.3, 1e-14);
}

TEST(Sylvester, UniquelySolvable) {
  const Instance in = small_instance(1, 1e-2, 3, 2);
  const SylvesterProblem p = make_sylvester_problem(in.ops, in.config, in.grid, fem::lowrank_desired(in.yd, 0));
  const MatrixXd a = dense_a(p), b(p.b());
  const MatrixXd op = oracle::kron(MatrixXd::Identity(b.rows(), b.rows()), a) +
                      oracle::kron(b.transpose(), MatrixXd::Identity(a.rows(), a.rows()));
  const VectorXd s = Eigen::JacobiSVD<MatrixXd>(op).singularValues();
  EXPECT_GT(s.minCoeff(), 1e-8 * s.maxCoeff());
}

TEST(Sylvester, ShiftInvariant) {
  Instance in = small_instance(1, 1e-3, 3);
  const LowRank yd = fem::lowrank_desired(in.yd, 1e-14);
  in.config.shift = 0.0;
  const MatrixXd x0 = sylvester_solution(make_sylvester_problem(in.ops, in.config, in.grid, yd));
  in.config.shift = 2.5;
  const MatrixXd x1 = sylvester_solution(make_sylvester_problem(in.ops, in.config, in.grid, yd));
  EXPECT_LE(oracle::rel(x1, x0), 1e-10);
}

TEST(Sylvester, ScalingInvariant) {
  Instance in = small_instance(1, 1e-2, 3);
  const LowRank yd = fem::lowrank_desired(in.yd, 1e-14);
  const MatrixXd x0 = sylvester_solution(make_sylvester_problem(in.ops, in.config, in.grid, yd));
  const fem::SpaceOperators scaled{SpMat(7.0 * in.ops.mass), SpMat(7.0 * in.ops.stiffness)};
  const MatrixXd x1 = sylvester_solution(make_sylvester_problem(scaled, in.config, in.grid, yd));
  EXPECT_LE(oracle::rel(x1, x0), 1e-12);
}

TEST(Sylvester, ZeroConductivityShiftedB) {
  Instance in = small_instance(0, 1e-2, 3);
  in.config.sigma = 0.0;
  in.config.shift = 0.5;
  const SylvesterProblem p = make_sylvester_problem(in.ops, in.config, in.grid, fem::lowrank_desired(in.yd, 0));
  MatrixXd expected = MatrixXd::Zero(6, 6);
  expected.topLeftCorner(3, 3) = expected.bottomRightCorner(3, 3) = -0.5 * MatrixXd::Identity(3, 3);
  expected.topRightCorner(3, 3) = 10 * MatrixXd::Identity(3, 3);
  expected.bottomLeftCorner(3, 3) = -10 * MatrixXd::Identity(3, 3);
  EXPECT_LE((MatrixXd(p.b()) - expected).norm(), 1e-14);
}

TEST(Sylvester, ApplyBt) {
  const Instance in = small_instance(1, 1e-2, 3, 2);
  const SylvesterProblem p = make_sylvester_problem(in.ops, in.config, in.grid, fem::lowrank_desired(in.yd, 0));
  std::mt19937 rng(9);
  const MatrixXd w = random_matrix(rng, 6, 2);
  const MatrixXd bt = MatrixXd(p.b()).transpose();
  EXPECT_LE((p.apply_Bt(w) - bt * w).norm(), 1e-14 * w.norm());
  EXPECT_LE((bt * p.apply_Bt_inverse(w) - w).norm(), 1e-12 * w.norm());
}

TEST(Sylvester, SplitFormEquivalence) {
  const Instance in = small_instance(1, 1e-3, 3);
  const SylvesterProblem p = make_sylvester_problem(in.ops, in.config, in.grid, fem::lowrank_desired(in.yd, 1e-14));
  const MatrixXd x = sylvester_solution(p);
  const KktSystem split = assemble_split_kronecker(in.ops, in.config, in.grid, in.yd);
  const VectorXd vx = Eigen::Map<const VectorXd>(x.data(), x.size());
  EXPECT_LE((split.matrix * vx - split.rhs).norm(), 1e-10 * split.rhs.norm());
}

TEST(ExtractSolution, Scaling) {
  LowRank x{MatrixXd::Ones(1, 1), MatrixXd(2, 1)};
  x.right << 3, 2;
  const SolutionFactors one = extract_solution(x, 1.0);
  EXPECT_DOUBLE_EQ(one.control.dense()(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(one.state.dense()(0, 0), 3.0);
  const SolutionFactors four = extract_solution(x, 4.0);
  EXPECT_DOUBLE_EQ(four.multiplier.dense()(0, 0), 4.0);
  EXPECT_DOUBLE_EQ(four.control.dense()(0, 0), 1.0);
  EXPECT_EQ(four.state.left, x.left);
  EXPECT_THROW(extract_solution(LowRank{MatrixXd::Ones(1, 1), MatrixXd::Ones(3, 1)}, 1.0), std::invalid_argument);
}

TEST(ExtractSolution, SatisfiesStateEquation) {
  const Instance in = small_instance(2, 1e-3, 4);
  const SylvesterProblem p = make_sylvester_problem(in.ops, in.config, in.grid, fem::lowrank_desired(in.yd, 1e-14));
  const MatrixXd x = sylvester_solution(p);
  const Eigen::BDCSVD<MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const LowRank factored{svd.matrixU() * svd.singularValues().asDiagonal(), svd.matrixV()};
  const SolutionFactors f = extract_solution(factored, in.config.beta);
  const double tau = in.grid.tau();
  const MatrixXd m(in.ops.mass), k(in.ops.stiffness);
  const MatrixXd nn = oracle::kron(MatrixXd::Identity(4, 4), tau * k) + oracle::kron(oracle::difference(4), 2 * m);
  const MatrixXd mt = oracle::kron(MatrixXd::Identity(4, 4), m);
  const MatrixXd y = f.state.dense(), u = f.control.dense();
  const VectorXd vy = Eigen::Map<const VectorXd>(y.data(), y.size());
  const VectorXd vu = Eigen::Map<const VectorXd>(u.data(), u.size());
  EXPECT_LE((nn * vy - tau * mt * vu).norm(), 1e-8 * (nn * vy).norm());
}
