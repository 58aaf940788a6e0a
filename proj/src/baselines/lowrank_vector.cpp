#include "eddy/baselines/lowrank_vector.hpp"

#include <cmath>

#include "eddy/la/truncated_svd.hpp"

namespace eddy {

namespace {

constexpr double kRoundingFloor = 64 * std::numeric_limits<double>::epsilon();

LowRank truncate_with_floor(const LowRank& x, double floor, const Truncation& trunc) {
  const auto s = la::factored_svd(x);
  Index k = 0;
  while (k < s.values.size() && s.values[k] > floor) ++k;
  const Eigen::VectorXd kept = s.values.head(k);
  const Index tail = la::frobenius_tail_rank<double>(kept, trunc.rel_tol, trunc.k_max);
  return la::keep_leading(s, tail);
}

}  // namespace

Eigen::VectorXd LowRankVector::dense() const {
  Eigen::VectorXd v(2 * n() * steps());
  const Eigen::MatrixXd yy = y.dense(), zz = z.dense();
  v.head(yy.size()) = Eigen::Map<const Eigen::VectorXd>(yy.data(), yy.size());
  v.tail(zz.size()) = Eigen::Map<const Eigen::VectorXd>(zz.data(), zz.size());
  return v;
}

double lowrank_dot(const LowRank& a, const LowRank& b) {
  if (a.rank() == 0 || b.rank() == 0) return 0.0;
  return (a.left.transpose() * b.left).cwiseProduct(a.right.transpose() * b.right).sum();
}

double lowrank_dot(const LowRankVector& a, const LowRankVector& b) { return lowrank_dot(a.y, b.y) + lowrank_dot(a.z, b.z); }

LowRank lowrank_combine(const std::vector<std::pair<double, const LowRank*>>& terms, const Truncation& trunc) {
  eigen_assert(!terms.empty());
  Index rows = terms.front().second->rows(), cols = terms.front().second->cols(), rank = 0;
  for (const auto& [c, x] : terms) {
    if (x->rows() != rows || x->cols() != cols) throw std::invalid_argument("lowrank_combine: blocks do not conform");
    if (c != 0.0) rank += x->rank();
  }
  LowRank sum(Eigen::MatrixXd(rows, rank), Eigen::MatrixXd(cols, rank));
  double scale = 0.0;
  Index at = 0;
  for (const auto& [c, x] : terms) {
    if (c == 0.0 || x->rank() == 0) continue;
    sum.left.middleCols(at, x->rank()) = c * x->left;
    sum.right.middleCols(at, x->rank()) = x->right;
    at += x->rank();
    scale += std::abs(c) * la::factored_norm<double>(x->left, x->right);
  }
  if (rank == 0) return LowRank::zero(rows, cols);
  return truncate_with_floor(sum, kRoundingFloor * scale, trunc);
}

LowRankVector lowrank_combine(const std::vector<std::pair<double, const LowRankVector*>>& terms,
                              const Truncation& trunc) {
  std::vector<std::pair<double, const LowRank*>> ys, zs;
  for (const auto& [c, v] : terms) {
    ys.emplace_back(c, &v->y);
    zs.emplace_back(c, &v->z);
  }
  return {lowrank_combine(ys, trunc), lowrank_combine(zs, trunc)};
}

LowRankVector lowrank_axpy_truncate(const LowRankVector& x, const LowRankVector& y, double alpha, double trunc_tol,
                                    Index k_max) {
  return lowrank_combine({{1.0, &x}, {alpha, &y}}, Truncation{trunc_tol, k_max});
}

LowRank lowrank_compress(const LowRank& x) {
  if (x.rank() == 0) return x;
  return truncate_with_floor(x, kRoundingFloor * la::factored_norm<double>(x.left, x.right),
                             Truncation{0.0, kUnboundedRank});
}

}  // namespace eddy

namespace eddy {

LowRank lowrank_from_dense(const Eigen::MatrixXd& x, const Truncation& trunc) {
  if (x.size() == 0) return LowRank::zero(x.rows(), x.cols());
  Eigen::BDCSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double floor = kRoundingFloor * s.norm();
  Index k = 0;
  while (k < s.size() && s[k] > floor) ++k;
  const Eigen::VectorXd kept = s.head(k);
  k = la::frobenius_tail_rank<double>(kept, trunc.rel_tol, trunc.k_max);
  return LowRank(svd.matrixU().leftCols(k), svd.matrixV().leftCols(k) * s.head(k).asDiagonal());
}

}  // namespace eddy
