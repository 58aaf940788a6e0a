#pragma once

#include <optional>
#include <stdexcept>

namespace eddy {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Regularization of the state equation in nonconducting regions.
enum class Regularization {
  none = 0,          // no regularization
  conductivity = 2,  // sigma -> max(sigma, eps)
  elliptic = 3,      // adds eps * M to the stiffness
};

/// Parses the numeric kind {0, 2, 3}; kind 1 (exact) is rejected.
Regularization parse_regularization(int kind);

struct TimeGrid {
  int steps = 1;
  double final_time = 1.0;

  double tau() const { return final_time / steps; }
  void validate() const;
};

struct ProblemConfig {
  double sigma = 1.0;
  double beta = 1e-4;
  double nu = 1.0;
  Regularization regularization = Regularization::elliptic;
  double eps_reg = 1e-6;
  std::optional<double> shift;  // unset: chosen by default_shift()
  double tol = 1e-6;
  double trunc_tol = 1e-10;
  int max_iterations = 500;

  void validate() const;

  /// Conductivity entering M_sigma (raised to eps under conductivity regularization).
  double effective_sigma() const;
  /// Coefficient of the mass term added to K.
  double stiffness_mass_term() const;
  /// 0 when K is positive definite through regularization, otherwise nu.
  double default_shift() const;
  double effective_shift() const { return shift.value_or(default_shift()); }
};

}  // namespace eddy
