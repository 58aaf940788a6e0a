#pragma once

#include <complex>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "eddy/la/schur.hpp"

namespace eddy::la {

class SylvesterSingularError : public std::runtime_error {
 public:
  SylvesterSingularError(const std::string& what, std::complex<double> eigenvalue)
      : std::runtime_error(what), eigenvalue_(eigenvalue) {}
  /// Eigenvalue of the left matrix that (nearly) equals minus an eigenvalue of the right matrix.
  std::complex<double> eigenvalue() const { return eigenvalue_; }

 private:
  std::complex<double> eigenvalue_;
};

namespace detail {

// Solves s_a Z + Z s_b = f for 1x1 / 2x2 blocks via the Kronecker form.
template <typename Scalar>
DenseMatrix<Scalar> solve_small_sylvester(const DenseMatrix<Scalar>& s_a, const DenseMatrix<Scalar>& s_b,
                                          const DenseMatrix<Scalar>& f, Scalar singular_tol) {
  const Index a = s_a.rows(), b = s_b.rows();
  DenseMatrix<Scalar> g = DenseMatrix<Scalar>::Zero(a * b, a * b);
  for (Index j = 0; j < b; ++j) {
    g.block(j * a, j * a, a, a) += s_a;
    for (Index i = 0; i < b; ++i) g.block(j * a, i * a, a, a).diagonal().array() += s_b(i, j);
  }
  Eigen::FullPivLU<DenseMatrix<Scalar>> lu(g);
  const Scalar min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(min_pivot > singular_tol)) {
    const auto ev = quasi_triangular_eigenvalues<Scalar>(s_a);
    std::ostringstream msg;
    msg << "solve_sylvester_dense: spectra of the coefficient matrices overlap near eigenvalue "
        << ev.front() << " (smallest pivot " << min_pivot << ")";
    throw SylvesterSingularError(msg.str(), std::complex<double>(ev.front()));
  }
  const DenseVector<Scalar> z = lu.solve(f.reshaped());
  return z.reshaped(a, b);
}

}  // namespace detail

/// Bartels-Stewart solve of  ta * Y + Y * tb^T = c.
///
/// Both coefficient matrices are reduced to real Schur form; the transformed
/// equation is then solved block column by block column with 1x1 and 2x2
/// diagonal blocks handled through their small Kronecker systems.
template <typename Scalar>
DenseMatrix<Scalar> solve_sylvester_dense(const DenseMatrix<Scalar>& ta, const DenseMatrix<Scalar>& tb,
                                          const DenseMatrix<Scalar>& c) {
  if (ta.rows() != ta.cols() || tb.rows() != tb.cols())
    throw std::invalid_argument("solve_sylvester_dense: coefficient matrices must be square");
  if (c.rows() != ta.rows() || c.cols() != tb.rows())
    throw std::invalid_argument("solve_sylvester_dense: right-hand side is not conformal");
  const Index p = ta.rows(), q = tb.rows();
  if (p == 0 || q == 0) return DenseMatrix<Scalar>::Zero(p, q);

  const auto sa = real_schur(ta);
  const auto sb = real_schur(DenseMatrix<Scalar>(tb.transpose()));
  const DenseMatrix<Scalar>& ua = sa.t;
  const DenseMatrix<Scalar>& ub = sb.t;

  const Scalar scale = std::max(Scalar(1), ta.norm() + tb.norm());
  const Scalar singular_tol = Scalar(64) * std::numeric_limits<Scalar>::epsilon() * scale;

  DenseMatrix<Scalar> y = sa.q.transpose() * c * sb.q;
  const auto a_blocks = schur_block_sizes(ua);
  const auto b_blocks = schur_block_sizes(ub);

  // Column blocks left to right: ua Y_j + Y_j ub_jj = C_j - Y_{<j} ub_{<j, j}.
  Index j0 = 0;
  for (Index bj : b_blocks) {
    if (j0 > 0) y.middleCols(j0, bj).noalias() -= y.leftCols(j0) * ub.block(0, j0, j0, bj);
    const DenseMatrix<Scalar> ub_jj = ub.block(j0, j0, bj, bj);
    // Row blocks bottom to top within the column block.
    Index i_end = p;
    for (auto it = a_blocks.rbegin(); it != a_blocks.rend(); ++it) {
      const Index ai = *it;
      const Index i0 = i_end - ai;
      DenseMatrix<Scalar> f = y.block(i0, j0, ai, bj);
      if (i_end < p) f.noalias() -= ua.block(i0, i_end, ai, p - i_end) * y.block(i_end, j0, p - i_end, bj);
      y.block(i0, j0, ai, bj) =
          detail::solve_small_sylvester<Scalar>(ua.block(i0, i0, ai, ai), ub_jj, f, singular_tol);
      i_end = i0;
    }
    j0 += bj;
  }
  return sa.q * y * sb.q.transpose();
}

}  // namespace eddy::la
