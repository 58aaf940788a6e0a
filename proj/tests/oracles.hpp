#pragma once

// Dense reference computations used only by the tests. They are written
// from the defining formulas and share no code with the library solvers.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cmath>

namespace oracle {

using Eigen::MatrixXd;
using Eigen::VectorXd;

inline MatrixXd kron(const MatrixXd& a, const MatrixXd& b) {
  MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// A X + X B = R through (I (x) A + B^T (x) I) vec X = vec R.
inline MatrixXd sylvester(const MatrixXd& a, const MatrixXd& b, const MatrixXd& r) {
  const auto p = a.rows(), q = b.rows();
  const MatrixXd op = kron(MatrixXd::Identity(q, q), a) + kron(b.transpose(), MatrixXd::Identity(p, p));
  const VectorXd x = op.fullPivLu().solve(Eigen::Map<const VectorXd>(r.data(), r.size()));
  return Eigen::Map<const MatrixXd>(x.data(), p, q);
}

inline MatrixXd difference(int steps) {
  MatrixXd c = MatrixXd::Identity(steps, steps);
  for (int i = 1; i < steps; ++i) c(i, i - 1) = -1.0;
  return c;
}

struct Optimum {
  MatrixXd state, control, multiplier;  // n x steps
};

/// Assembles and solves the all-at-once optimality system in (Y, U, Lambda):
///   tau M_T Y + N^T Lambda = tau M_T Y_d
///   tau beta M_T U - tau M_T Lambda = 0
///   N Y - tau M_T U = 0
/// with M_T = I (x) M, N = I (x) tau K + C (x) sigma M.
inline Optimum kkt_optimum(const MatrixXd& m, const MatrixXd& k, double sigma, double beta, double tau,
                           const MatrixXd& yd) {
  const auto n = m.rows();
  const int steps = static_cast<int>(yd.cols());
  const auto nm = n * steps;
  const MatrixXd mt = kron(MatrixXd::Identity(steps, steps), m);
  const MatrixXd nn = kron(MatrixXd::Identity(steps, steps), tau * k) + kron(difference(steps), sigma * m);
  MatrixXd a = MatrixXd::Zero(3 * nm, 3 * nm);
  a.block(0, 0, nm, nm) = tau * mt;
  a.block(0, 2 * nm, nm, nm) = nn.transpose();
  a.block(nm, nm, nm, nm) = tau * beta * mt;
  a.block(nm, 2 * nm, nm, nm) = -tau * mt;
  a.block(2 * nm, 0, nm, nm) = nn;
  a.block(2 * nm, nm, nm, nm) = -tau * mt;
  VectorXd b = VectorXd::Zero(3 * nm);
  b.head(nm) = tau * mt * Eigen::Map<const VectorXd>(yd.data(), yd.size());
  const VectorXd x = a.partialPivLu().solve(b);
  Optimum o;
  o.state = Eigen::Map<const MatrixXd>(x.data(), n, steps);
  o.control = Eigen::Map<const MatrixXd>(x.data() + nm, n, steps);
  o.multiplier = Eigen::Map<const MatrixXd>(x.data() + 2 * nm, n, steps);
  return o;
}

/// Reduced system in (Y, Z = Lambda / sqrt(beta)):
///   [tau M_T          sqrt(beta) N^T] [Y]   [tau M_T Y_d]
///   [sqrt(beta) N     -tau M_T      ] [Z] = [0          ]
/// returning Y, U = Lambda / beta and Lambda.
inline Optimum reduced_optimum(const MatrixXd& m, const MatrixXd& k, double sigma, double beta, double tau,
                               const MatrixXd& yd) {
  const auto n = m.rows();
  const int steps = static_cast<int>(yd.cols());
  const auto nm = n * steps;
  const MatrixXd mt = kron(MatrixXd::Identity(steps, steps), m);
  const MatrixXd nn = kron(MatrixXd::Identity(steps, steps), tau * k) + kron(difference(steps), sigma * m);
  const double sb = std::sqrt(beta);
  MatrixXd a(2 * nm, 2 * nm);
  a << tau * mt, sb * nn.transpose(), sb * nn, -tau * mt;
  VectorXd b = VectorXd::Zero(2 * nm);
  b.head(nm) = tau * mt * Eigen::Map<const VectorXd>(yd.data(), yd.size());
  const VectorXd x = a.partialPivLu().solve(b);
  Optimum o;
  o.state = Eigen::Map<const MatrixXd>(x.data(), n, steps);
  o.multiplier = sb * Eigen::Map<const MatrixXd>(x.data() + nm, n, steps);
  o.control = o.multiplier / beta;
  return o;
}

/// S_hat = (1/tau)(N + c M_T) M_T^{-1} (N + c M_T)^T with c = tau / sqrt(beta).
inline MatrixXd schur_hat(const MatrixXd& m, const MatrixXd& k, double sigma, double beta, double tau, int steps) {
  const MatrixXd mt = kron(MatrixXd::Identity(steps, steps), m);
  const MatrixXd nn = kron(MatrixXd::Identity(steps, steps), tau * k) + kron(difference(steps), sigma * m);
  const MatrixXd f = nn + (tau / std::sqrt(beta)) * mt;
  return f * mt.llt().solve(f.transpose()) / tau;
}

inline double rel(const MatrixXd& a, const MatrixXd& ref) {
  const double r = ref.norm();
  return r > 0 ? (a - ref).norm() / r : (a - ref).norm();
}

}  // namespace oracle
