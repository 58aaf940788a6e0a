#pragma once

#include <vector>

#include "eddy/la/types.hpp"

namespace eddy::la {

/// Relative deflation threshold: a column is dropped when its norm after
/// projection falls below this fraction of its norm before projection.
inline constexpr double kDeflationTolerance = 1e-12;

/// Modified Gram-Schmidt with one full re-orthogonalization pass.
///
/// Columns of `block` are orthonormalized one at a time against the columns
/// of `against` (assumed orthonormal) and against the columns accepted so
/// far. Columns that are numerically dependent are dropped, so the result
/// may have fewer columns than `block` (possibly none).
template <typename DerivedBlock, typename DerivedBasis>
DenseMatrix<typename DerivedBlock::Scalar> mgs_orthonormalize(const Eigen::MatrixBase<DerivedBlock>& block,
                                                              const Eigen::MatrixBase<DerivedBasis>& against) {
  using Scalar = typename DerivedBlock::Scalar;
  eigen_assert(against.cols() == 0 || against.rows() == block.rows());

  const Index n = block.rows();
  DenseMatrix<Scalar> q(n, block.cols());
  Index kept = 0;
  DenseVector<Scalar> w;
  for (Index j = 0; j < block.cols(); ++j) {
    w = block.col(j);
    const Scalar before = w.norm();
    if (!(before > Scalar(0))) continue;
    for (int pass = 0; pass < 2; ++pass) {
      for (Index k = 0; k < against.cols(); ++k) w -= against.col(k).dot(w) * against.col(k);
      for (Index k = 0; k < kept; ++k) w -= q.col(k).dot(w) * q.col(k);
    }
    const Scalar after = w.norm();
    if (after < Scalar(kDeflationTolerance) * before) continue;
    q.col(kept++) = w / after;
  }
  q.conservativeResize(n, kept);
  return q;
}

template <typename DerivedBlock>
DenseMatrix<typename DerivedBlock::Scalar> mgs_orthonormalize(const Eigen::MatrixBase<DerivedBlock>& block) {
  return mgs_orthonormalize(block, DenseMatrix<typename DerivedBlock::Scalar>(block.rows(), 0));
}

}  // namespace eddy::la
