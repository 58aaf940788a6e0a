#pragma once

#include <memory>
#include <stdexcept>

#include "eddy/la/types.hpp"

namespace eddy::la {

class FactorizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FactorizationKind { cholesky, lu };

/// Immutable sparse direct factorization (cheap to copy, safe to share
/// between threads for solves).
///
/// Cholesky uses an approximate minimum degree symmetric ordering; LU uses
/// column approximate minimum degree with partial pivoting.
class SparseFactorization {
 public:
  FactorizationKind kind() const { return kind_; }
  Index size() const { return size_; }

  Eigen::MatrixXd solve(const Eigen::MatrixXd& b) const;
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
  /// Solves A^T x = b.
  Eigen::MatrixXd solve_transpose(const Eigen::MatrixXd& b) const;

  /// Fill-reducing permutation as an index vector.
  Eigen::VectorXi permutation() const;
  /// Lower triangular Cholesky factor of P A P^T (Cholesky only).
  SpMat cholesky_factor() const;

  friend SparseFactorization sparse_spd_factorize(const SpMat& a);
  friend SparseFactorization sparse_lu_factorize(const SpMat& a);

 private:
  struct Impl;
  SparseFactorization(FactorizationKind kind, Index size, std::shared_ptr<const Impl> impl)
      : kind_(kind), size_(size), impl_(std::move(impl)) {}

  FactorizationKind kind_;
  Index size_ = 0;
  std::shared_ptr<const Impl> impl_;
};

/// Sparse Cholesky of a symmetric positive definite matrix.
/// Throws FactorizationError ("not SPD") on a non-positive pivot.
SparseFactorization sparse_spd_factorize(const SpMat& a);

/// Sparse LU with partial pivoting. Throws FactorizationError on singularity.
SparseFactorization sparse_lu_factorize(const SpMat& a);

}  // namespace eddy::la
