#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace eddy {

struct MinresControl {
  double tol = 1e-6;
  int max_iterations = 500;
};

template <typename Vector>
struct MinresOutcome {
  Vector x;
  int iterations = 0;
  double relative_residual = 1.0;
  bool converged = false;
  std::vector<double> residual_history;         // true relative residual after each step
  std::vector<double> preconditioned_history;   // |eta|, monotone non-increasing
};

/// Preconditioned MINRES for a symmetric operator with an SPD preconditioner,
/// written against an abstract vector space so full and factored iterates
/// share the recurrence. `Space` provides
///   Vector zero(const Vector& like)
///   Vector apply(const Vector&)            operator
///   Vector precondition(const Vector&)     preconditioner inverse
///   double dot(const Vector&, const Vector&)
///   Vector combine({{c, &v}, ...})         linear combination (may recompress)
///   double residual_norm(const Vector& b, const Vector& x)   ||b - A x||
///   double norm(const Vector&)
/// The observer sees every iterate x_j. Starts from x_0 = 0.
template <typename Space>
MinresOutcome<typename Space::Vector> preconditioned_minres(
    const Space& space, const typename Space::Vector& b, const MinresControl& control,
    const std::function<void(int, const typename Space::Vector&)>& observer = {}) {
  using Vector = typename Space::Vector;
  MinresOutcome<Vector> out;
  out.x = space.zero(b);
  const double b_norm = space.norm(b);
  if (b_norm == 0.0) {
    out.relative_residual = 0.0;
    out.converged = true;
    return out;
  }

  Vector v_prev = space.zero(b);
  Vector v = b;
  Vector z = space.precondition(v);
  double gamma = std::sqrt(space.dot(z, v));
  if (!(gamma > 0.0)) throw std::runtime_error("minres: preconditioner is not positive definite");
  double eta = gamma;
  double c_prev = 1.0, c = 1.0, s_prev = 0.0, s = 0.0;
  Vector w_prev = space.zero(b);
  Vector w = space.zero(b);

  for (int j = 1; j <= control.max_iterations; ++j) {
    z = space.combine({{1.0 / gamma, &z}});
    v = space.combine({{1.0 / gamma, &v}});
    const Vector az = space.apply(z);
    const double delta = space.dot(az, z);
    Vector v_next = space.combine({{1.0, &az}, {-delta, &v}, {-gamma, &v_prev}});
    Vector z_next = space.precondition(v_next);
    const double gamma_sq = space.dot(z_next, v_next);
    if (gamma_sq < 0.0) throw std::runtime_error("minres: preconditioner is not positive definite");
    const double gamma_next = std::sqrt(gamma_sq);

    const double a0 = c * delta - c_prev * s * gamma;
    const double a1 = std::hypot(a0, gamma_next);
    const double a2 = s * delta + c_prev * c * gamma;
    const double a3 = s_prev * gamma;
    if (a1 == 0.0) throw std::runtime_error("minres: breakdown (singular operator)");
    c_prev = c;
    s_prev = s;
    c = a0 / a1;
    s = gamma_next / a1;

    Vector w_next = space.combine({{1.0 / a1, &z}, {-a3 / a1, &w_prev}, {-a2 / a1, &w}});
    out.x = space.combine({{1.0, &out.x}, {c * eta, &w_next}});
    eta = -s * eta;

    out.iterations = j;
    out.relative_residual = space.residual_norm(b, out.x) / b_norm;
    out.residual_history.push_back(out.relative_residual);
    out.preconditioned_history.push_back(std::abs(eta));
    if (observer) observer(j, out.x);
    if (out.relative_residual <= control.tol) {
      out.converged = true;
      break;
    }
    if (gamma_next == 0.0) break;  // invariant Krylov space: x is the exact minimizer

    v_prev = std::move(v);
    v = std::move(v_next);
    z = std::move(z_next);
    gamma = gamma_next;
    w_prev = std::move(w);
    w = std::move(w_next);
  }
  return out;
}

}  // namespace eddy
