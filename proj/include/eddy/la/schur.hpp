#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "eddy/la/types.hpp"

namespace eddy::la {

class SchurConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename Scalar>
struct RealSchurForm {
  DenseMatrix<Scalar> q;  // orthogonal
  DenseMatrix<Scalar> t;  // quasi upper triangular, a = q t q^T
};

/// Real Schur decomposition via Francis double-shift QR.
template <typename Derived>
RealSchurForm<typename Derived::Scalar> real_schur(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  if (a.rows() != a.cols()) throw std::invalid_argument("real_schur: matrix is not square");
  if (!a.allFinite()) throw std::invalid_argument("real_schur: matrix has non-finite entries");
  if (a.rows() == 0) return {DenseMatrix<Scalar>(0, 0), DenseMatrix<Scalar>(0, 0)};
  Eigen::RealSchur<DenseMatrix<Scalar>> schur(a.rows());
  schur.setMaxIterations(40 * a.rows());
  schur.compute(a);
  if (schur.info() != Eigen::Success) {
    throw SchurConvergenceError("real_schur: QR iteration did not converge for a " + std::to_string(a.rows()) +
                                "x" + std::to_string(a.rows()) + " matrix");
  }
  return {schur.matrixU(), schur.matrixT()};
}

/// Sizes (1 or 2) of the diagonal blocks of a quasi upper triangular matrix.
template <typename Scalar>
std::vector<Index> schur_block_sizes(const DenseMatrix<Scalar>& t) {
  std::vector<Index> sizes;
  const Index n = t.rows();
  for (Index i = 0; i < n;) {
    const Index s = (i + 1 < n && t(i + 1, i) != Scalar(0)) ? 2 : 1;
    sizes.push_back(s);
    i += s;
  }
  return sizes;
}

/// Eigenvalues read off the diagonal blocks of a quasi upper triangular matrix.
template <typename Scalar>
std::vector<std::complex<Scalar>> quasi_triangular_eigenvalues(const DenseMatrix<Scalar>& t) {
  std::vector<std::complex<Scalar>> ev;
  Index i = 0;
  for (Index s : schur_block_sizes(t)) {
    if (s == 1) {
      ev.emplace_back(t(i, i), Scalar(0));
    } else {
      const Scalar p = Scalar(0.5) * (t(i, i) + t(i + 1, i + 1));
      const Scalar det = t(i, i) * t(i + 1, i + 1) - t(i, i + 1) * t(i + 1, i);
      const std::complex<Scalar> disc = std::sqrt(std::complex<Scalar>(p * p - det));
      ev.push_back(p + disc);
      ev.push_back(p - disc);
    }
    i += s;
  }
  return ev;
}

}  // namespace eddy::la
