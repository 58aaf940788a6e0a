#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "eddy/la/types.hpp"

namespace eddy {

/// KKT iterate of the reduced system with both blocks (state Y and scaled
/// multiplier Z = Lambda / sqrt(beta)) held in factored form.
struct LowRankVector {
  LowRank y;
  LowRank z;

  static LowRankVector zero(Index n, Index steps) { return {LowRank::zero(n, steps), LowRank::zero(n, steps)}; }

  Index n() const { return y.rows(); }
  Index steps() const { return y.cols(); }
  Index max_rank() const { return std::max(y.rank(), z.rank()); }
  /// vec([Y, Z]).
  Eigen::VectorXd dense() const;
};

inline constexpr Index kUnboundedRank = std::numeric_limits<Index>::max();

struct Truncation {
  double rel_tol = 1e-10;  // Frobenius tail relative to the block norm
  Index k_max = 50;
};

/// Euclidean inner product of the vectorized matrices, from the factors.
double lowrank_dot(const LowRank& a, const LowRank& b);
double lowrank_dot(const LowRankVector& a, const LowRankVector& b);

/// sum_i c_i X_i per block, recompressed. Directions whose singular values
/// sit at rounding level relative to the inputs are always discarded, so
/// exact cancellation gives rank zero even with rel_tol = 0.
LowRank lowrank_combine(const std::vector<std::pair<double, const LowRank*>>& terms, const Truncation& trunc);
LowRankVector lowrank_combine(const std::vector<std::pair<double, const LowRankVector*>>& terms,
                              const Truncation& trunc);

/// x + alpha y.
LowRankVector lowrank_axpy_truncate(const LowRankVector& x, const LowRankVector& y, double alpha, double trunc_tol,
                                    Index k_max);

/// Recompression without rank cap or tail tolerance, keeping every direction
/// above rounding level.
LowRank lowrank_compress(const LowRank& x);

}  // namespace eddy

namespace eddy {

/// Factored form of a dense block via its SVD, truncated like lowrank_combine.
LowRank lowrank_from_dense(const Eigen::MatrixXd& x, const Truncation& trunc);

}  // namespace eddy
