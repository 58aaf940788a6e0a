#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace eddy {

using Index = Eigen::Index;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Column-compressed storage; every operator in this project is symmetric or
// small, so the CSC/CSR distinction only matters for I/O ordering.
template <typename Scalar>
using SparseMatrix = Eigen::SparseMatrix<Scalar>;

using SpMat = SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

/// A matrix held as left * right^T.
template <typename Scalar>
struct LowRankMatrix {
  DenseMatrix<Scalar> left;   // rows x r
  DenseMatrix<Scalar> right;  // cols x r

  LowRankMatrix() = default;
  LowRankMatrix(DenseMatrix<Scalar> l, DenseMatrix<Scalar> r) : left(std::move(l)), right(std::move(r)) {
    eigen_assert(left.cols() == right.cols());
  }

  static LowRankMatrix zero(Index rows, Index cols) {
    return LowRankMatrix(DenseMatrix<Scalar>(rows, 0), DenseMatrix<Scalar>(cols, 0));
  }

  Index rows() const { return left.rows(); }
  Index cols() const { return right.rows(); }
  Index rank() const { return left.cols(); }

  DenseMatrix<Scalar> dense() const { return left * right.transpose(); }
};

using LowRank = LowRankMatrix<double>;

}  // namespace eddy
