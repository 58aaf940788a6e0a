#include "eddy/skpik/skpik.hpp"

#include <chrono>
#include <cmath>

#include "eddy/la/gram_schmidt.hpp"
#include "eddy/la/sylvester.hpp"
#include "eddy/la/truncated_svd.hpp"

namespace eddy {

namespace {

using Eigen::MatrixXd;

void append_cols(MatrixXd& a, const MatrixXd& extra) {
  if (extra.cols() == 0) return;
  const Index old = a.cols();
  a.conservativeResize(extra.rows(), old + extra.cols());
  a.rightCols(extra.cols()) = extra;
}

// Basis, operator images and newest block for one side.
struct Side {
  MatrixXd& basis;
  MatrixXd& image;
  MatrixXd& projected;
  BlockSplit& block;
  bool& closed;
};

template <typename Forward, typename Inverse>
void start_side(Side s, const MatrixXd& start, Forward&& forward, Inverse&& inverse) {
  MatrixXd first = la::mgs_orthonormalize(start);
  if (first.cols() == 0) throw std::invalid_argument("skpik: right-hand side factor is numerically zero");
  MatrixXd second = la::mgs_orthonormalize(inverse(first), first);
  s.basis = first;
  append_cols(s.basis, second);
  s.image = forward(s.basis);
  s.projected = s.basis.transpose() * s.image;
  s.block = BlockSplit{0, first.cols(), second.cols()};
}

// Extends the basis by the operator applied to the forward part and the
// inverse applied to the inverse part of the newest block. Returns false when
// nothing new survives orthogonalization.
template <typename Forward, typename Inverse>
bool extend_side(Side s, Forward&& forward, Inverse&& inverse) {
  if (s.closed) return false;
  const BlockSplit last = s.block;
  const Index p = s.basis.cols();
  MatrixXd first =
      la::mgs_orthonormalize(s.image.middleCols(last.offset, last.forward), s.basis);
  append_cols(s.basis, first);
  MatrixXd second = MatrixXd(s.basis.rows(), 0);
  if (last.inverse > 0)
    second = la::mgs_orthonormalize(inverse(s.basis.middleCols(last.offset + last.forward, last.inverse)),
                                    s.basis);
  append_cols(s.basis, second);
  const Index added = first.cols() + second.cols();
  if (added == 0) {
    s.closed = true;
    return false;
  }
  const MatrixXd fresh = s.basis.rightCols(added);
  const MatrixXd fresh_image = forward(fresh);
  append_cols(s.image, fresh_image);

  MatrixXd t(p + added, p + added);
  t.topLeftCorner(p, p) = s.projected;
  t.topRightCorner(p, added) = s.basis.leftCols(p).transpose() * fresh_image;
  t.bottomRows(added) = fresh.transpose() * s.image;
  s.projected = std::move(t);
  s.block = BlockSplit{p, first.cols(), second.cols()};
  return true;
}

// Triangular factor of (I - V V^T) applied to the images of the newest block.
MatrixXd escape_factor(const MatrixXd& basis, const MatrixXd& image, const BlockSplit& block) {
  MatrixXd e = image.middleCols(block.offset, block.width());
  for (int pass = 0; pass < 2; ++pass) e -= basis * (basis.transpose() * e);
  return la::thin_r<double>(e);
}

double projected_residual(const KpikState& st) {
  const MatrixXd galerkin = st.ta * st.y + st.y * st.tb.transpose() - st.r1r * st.r2r.transpose();
  double sq = galerkin.squaredNorm();
  const MatrixXd el = escape_factor(st.u, st.au, st.left_block);
  sq += (el * st.y.middleRows(st.left_block.offset, st.left_block.width())).squaredNorm();
  const MatrixXd er = escape_factor(st.w, st.btw, st.right_block);
  sq += (st.y.middleCols(st.right_block.offset, st.right_block.width()) * er.transpose()).squaredNorm();
  const double abs = std::sqrt(sq);
  return st.rhs_norm > 0.0 ? abs / st.rhs_norm : abs;
}

Side left_side(KpikState& st) { return Side{st.u, st.au, st.ta, st.left_block, st.left_closed}; }
Side right_side(KpikState& st) { return Side{st.w, st.btw, st.tb, st.right_block, st.right_closed}; }

}  // namespace

KpikState skpik_init(const SylvesterProblem& problem) {
  KpikState st;
  start_side(
      left_side(st), problem.r1(), [&](const MatrixXd& v) { return problem.apply_A(v); },
      [&](const MatrixXd& v) { return problem.apply_A_inverse(v); });
  start_side(
      right_side(st), problem.r2(), [&](const MatrixXd& v) { return problem.apply_Bt(v); },
      [&](const MatrixXd& v) { return problem.apply_Bt_inverse(v); });
  st.r1r = st.u.transpose() * problem.r1();
  st.r2r = st.w.transpose() * problem.r2();
  st.rhs_norm = la::factored_norm<double>(problem.r1(), problem.r2());
  st.y = MatrixXd::Zero(st.p(), st.q());
  return st;
}

void skpik_sweep(KpikState& st, const SylvesterProblem& problem, ResidualEvaluation mode) {
  if (st.sweeps > 0) {
    const bool grew_left = extend_side(
        left_side(st), [&](const MatrixXd& v) { return problem.apply_A(v); },
        [&](const MatrixXd& v) { return problem.apply_A_inverse(v); });
    const bool grew_right = extend_side(
        right_side(st), [&](const MatrixXd& v) { return problem.apply_Bt(v); },
        [&](const MatrixXd& v) { return problem.apply_Bt_inverse(v); });
    if (!grew_left && !grew_right) throw KpikStagnation("skpik: both Krylov spaces are invariant");
    st.r1r = st.u.transpose() * problem.r1();
    st.r2r = st.w.transpose() * problem.r2();
  }
  st.y = la::solve_sylvester_dense<double>(st.ta, st.tb, st.r1r * st.r2r.transpose());
  ++st.sweeps;
  const double res = mode == ResidualEvaluation::factored ? factored_residual(st.u * st.y, st.w, problem)
                                                          : projected_residual(st);
  st.residual_history.push_back(res);
}

double factored_residual(const MatrixXd& x1, const MatrixXd& x2, const SylvesterProblem& problem) {
  if (x1.rows() != problem.n() || x2.rows() != problem.m() || x1.cols() != x2.cols())
    throw std::invalid_argument("factored_residual: factor shapes do not match the problem");
  const Index r = x1.cols(), k = problem.r1().cols();
  MatrixXd left(problem.n(), 2 * r + k), right(problem.m(), 2 * r + k);
  left << problem.apply_A(x1), x1, -problem.r1();
  right << x2, problem.apply_Bt(x2), problem.r2();
  const double abs = la::factored_norm<double>(left, right);
  const double ref = la::factored_norm<double>(problem.r1(), problem.r2());
  return ref > 0.0 ? abs / ref : abs;
}

SkpikResult skpik_solve(const SylvesterProblem& problem, const SkpikOptions& options) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("skpik: tol must be positive");
  if (options.trunc_tol < 0.0) throw std::invalid_argument("skpik: trunc_tol must be non-negative");
  if (options.max_sweeps < 1) throw std::invalid_argument("skpik: max_sweeps must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  SkpikResult out;
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

  if (la::factored_norm<double>(problem.r1(), problem.r2()) == 0.0) {
    out.x = LowRank::zero(problem.n(), problem.m());
    out.report.converged = true;
    out.report.zero_rhs = true;
    out.report.seconds = elapsed();
    return out;
  }

  KpikState st = skpik_init(problem);
  auto finish = [&] {
    out.x = la::truncated_svd(st.iterate(), options.trunc_tol);
    out.report.relative_residual = factored_residual(out.x.left, out.x.right, problem);
    out.report.converged = out.report.relative_residual <= options.tol;
  };
  bool done = false;
  while (!done && st.sweeps < options.max_sweeps) {
    try {
      skpik_sweep(st, problem, options.residual);
    } catch (const KpikStagnation&) {
      out.report.stagnated = true;
      break;
    }
    if (st.residual_history.back() <= options.tol) {
      finish();
      done = out.report.converged;
    }
  }
  if (!done) finish();
  out.report.rank = out.x.rank();
  out.report.iterations = st.sweeps;
  out.report.mean_iterations = st.sweeps;
  out.report.residual_history = st.residual_history;
  out.report.p = st.p();
  out.report.q = st.q();
  out.report.seconds = elapsed();
  return out;
}

}  // namespace eddy
