#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "eddy/la/types.hpp"

namespace eddy::la {

/// Thin QR of a tall block: returns (Q, R) with Q having min(rows, cols)
/// orthonormal columns.
template <typename Scalar>
std::pair<DenseMatrix<Scalar>, DenseMatrix<Scalar>> thin_qr(const DenseMatrix<Scalar>& a) {
  const Index k = std::min(a.rows(), a.cols());
  Eigen::HouseholderQR<DenseMatrix<Scalar>> qr(a);
  DenseMatrix<Scalar> q = qr.householderQ() * DenseMatrix<Scalar>::Identity(a.rows(), k);
  DenseMatrix<Scalar> r = qr.matrixQR().topRows(k).template triangularView<Eigen::Upper>();
  return {std::move(q), std::move(r)};
}

/// Triangular factor of a thin QR (Q is never formed).
template <typename Scalar>
DenseMatrix<Scalar> thin_r(const DenseMatrix<Scalar>& a) {
  const Index k = std::min(a.rows(), a.cols());
  Eigen::HouseholderQR<DenseMatrix<Scalar>> qr(a);
  return qr.matrixQR().topRows(k).template triangularView<Eigen::Upper>();
}

/// SVD of left * right^T computed through skinny QR of both factors and an
/// SVD of the small core. Singular values are sorted in decreasing order.
template <typename Scalar>
struct FactoredSvd {
  DenseMatrix<Scalar> u;        // rows x k, orthonormal
  DenseVector<Scalar> values;   // k
  DenseMatrix<Scalar> v;        // cols x k, orthonormal
};

template <typename Scalar>
FactoredSvd<Scalar> factored_svd(const LowRankMatrix<Scalar>& x) {
  if (x.rank() == 0 || x.rows() == 0 || x.cols() == 0) {
    return {DenseMatrix<Scalar>(x.rows(), 0), DenseVector<Scalar>(0), DenseMatrix<Scalar>(x.cols(), 0)};
  }
  auto [q1, r1] = thin_qr<Scalar>(x.left);
  auto [q2, r2] = thin_qr<Scalar>(x.right);
  const DenseMatrix<Scalar> core = r1 * r2.transpose();
  Eigen::BDCSVD<DenseMatrix<Scalar>> svd(core, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {q1 * svd.matrixU(), svd.singularValues(), q2 * svd.matrixV()};
}

template <typename Scalar>
LowRankMatrix<Scalar> keep_leading(const FactoredSvd<Scalar>& s, Index k) {
  return LowRankMatrix<Scalar>(s.u.leftCols(k), s.v.leftCols(k) * s.values.head(k).asDiagonal());
}

/// Drops every singular value of x below `tol` (absolute). The left factor of
/// the result has orthonormal columns; the singular values sit in the right.
template <typename Scalar>
LowRankMatrix<Scalar> truncated_svd(const LowRankMatrix<Scalar>& x, Scalar tol) {
  eigen_assert(tol >= Scalar(0));
  const auto s = factored_svd(x);
  Index k = 0;
  while (k < s.values.size() && s.values[k] >= tol && s.values[k] > Scalar(0)) ++k;
  return keep_leading(s, k);
}

/// Smallest rank k such that the discarded tail satisfies
/// sqrt(sum_{i>k} s_i^2) <= rel_tol * ||x||_F, capped at max_rank.
template <typename Scalar>
Index frobenius_tail_rank(const DenseVector<Scalar>& values, Scalar rel_tol,
                          Index max_rank = std::numeric_limits<Index>::max()) {
  const Index m = values.size();
  const Scalar budget = rel_tol * values.norm();
  Scalar tail2 = 0;
  Index k = m;
  while (k > 0) {
    const Scalar next = tail2 + values[k - 1] * values[k - 1];
    if (std::sqrt(next) > budget) break;
    tail2 = next;
    --k;
  }
  return std::min(k, max_rank);
}

/// Relative Frobenius-tail truncation (used for low-rank Krylov iterates).
template <typename Scalar>
LowRankMatrix<Scalar> truncate_relative(const LowRankMatrix<Scalar>& x, Scalar rel_tol,
                                        Index max_rank = std::numeric_limits<Index>::max()) {
  const auto s = factored_svd(x);
  return keep_leading(s, frobenius_tail_rank(s.values, rel_tol, max_rank));
}

/// Frobenius norm of left * right^T without forming it.
template <typename Scalar>
Scalar factored_norm(const DenseMatrix<Scalar>& left, const DenseMatrix<Scalar>& right) {
  if (left.cols() == 0) return Scalar(0);
  return (thin_r<Scalar>(left) * thin_r<Scalar>(right).transpose()).norm();
}

}  // namespace eddy::la
