#include "eddy/la/sparse_factorization.hpp"

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <cmath>

namespace eddy::la {

using Cholesky = Eigen::SimplicialLLT<SpMat, Eigen::Lower, Eigen::AMDOrdering<int>>;
using LU = Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>>;

struct SparseFactorization::Impl {
  // Eigen's solvers are neither copyable nor movable; allocate in place.
  std::unique_ptr<Cholesky> chol;
  std::unique_ptr<LU> lu;
};

namespace {

void require_square(const SpMat& a, const char* who) {
  if (a.rows() != a.cols()) throw std::invalid_argument(std::string(who) + ": matrix is not square");
  if (a.rows() == 0) throw std::invalid_argument(std::string(who) + ": empty matrix");
}

}  // namespace

SparseFactorization sparse_spd_factorize(const SpMat& a) {
  require_square(a, "sparse_spd_factorize");
  const double asym = SpMat(a - SpMat(a.transpose())).norm();
  if (asym > 1e-12 * a.norm()) throw FactorizationError("sparse_spd_factorize: matrix is not symmetric");

  auto impl = std::make_shared<SparseFactorization::Impl>();
  impl->chol = std::make_unique<Cholesky>();
  impl->chol->compute(a);
  if (impl->chol->info() != Eigen::Success)
    throw FactorizationError("sparse_spd_factorize: matrix is not SPD (non-positive pivot)");
  return SparseFactorization(FactorizationKind::cholesky, a.rows(), std::move(impl));
}

SparseFactorization sparse_lu_factorize(const SpMat& a) {
  require_square(a, "sparse_lu_factorize");
  auto impl = std::make_shared<SparseFactorization::Impl>();
  impl->lu = std::make_unique<LU>();
  SpMat compressed = a;
  compressed.makeCompressed();
  impl->lu->analyzePattern(compressed);
  impl->lu->factorize(compressed);
  if (impl->lu->info() != Eigen::Success)
    throw FactorizationError("sparse_lu_factorize: matrix is singular (" + impl->lu->lastErrorMessage() + ")");
  if (!std::isfinite(impl->lu->logAbsDeterminant()))
    throw FactorizationError("sparse_lu_factorize: matrix is singular (zero pivot)");
  return SparseFactorization(FactorizationKind::lu, a.rows(), std::move(impl));
}

Eigen::MatrixXd SparseFactorization::solve(const Eigen::MatrixXd& b) const {
  if (b.rows() != size_) throw std::invalid_argument("SparseFactorization::solve: dimension mismatch");
  if (b.cols() == 0) return b;
  if (kind_ == FactorizationKind::cholesky) return impl_->chol->solve(b);
  return impl_->lu->solve(b);
}

Eigen::VectorXd SparseFactorization::solve(const Eigen::VectorXd& b) const {
  return solve(Eigen::MatrixXd(b)).col(0);
}

Eigen::MatrixXd SparseFactorization::solve_transpose(const Eigen::MatrixXd& b) const {
  if (kind_ == FactorizationKind::cholesky) return solve(b);
  if (b.rows() != size_) throw std::invalid_argument("SparseFactorization::solve_transpose: dimension mismatch");
  if (b.cols() == 0) return b;
  return impl_->lu->transpose().solve(b);
}

Eigen::VectorXi SparseFactorization::permutation() const {
  if (kind_ == FactorizationKind::cholesky) return impl_->chol->permutationP().indices();
  return impl_->lu->colsPermutation().indices();
}

SpMat SparseFactorization::cholesky_factor() const {
  if (kind_ != FactorizationKind::cholesky) throw std::logic_error("cholesky_factor: not a Cholesky factorization");
  return SpMat(impl_->chol->matrixL());
}

}  // namespace eddy::la
