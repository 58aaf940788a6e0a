#include "eddy/fem/config.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace eddy {

Regularization parse_regularization(int kind) {
  switch (kind) {
    case 0: return Regularization::none;
    case 2: return Regularization::conductivity;
    case 3: return Regularization::elliptic;
    case 1: throw ConfigError("regularization kind 1 (exact) is not supported");
    default: throw ConfigError("unknown regularization kind " + std::to_string(kind));
  }
}

void TimeGrid::validate() const {
  if (steps < 1) throw ConfigError("number of time steps must be >= 1");
  if (!(final_time > 0.0) || !std::isfinite(final_time)) throw ConfigError("final time must be positive");
}

void ProblemConfig::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ConfigError("beta must be positive");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ConfigError("sigma must be non-negative");
  if (!(nu > 0.0) || !std::isfinite(nu)) throw ConfigError("nu must be positive");
  if (!(eps_reg >= 0.0)) throw ConfigError("regularization epsilon must be non-negative");
  if (shift && !(*shift >= 0.0)) throw ConfigError("shift must be non-negative");
  if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");
  if (!(trunc_tol >= 0.0)) throw ConfigError("truncation tolerance must be non-negative");
  if (max_iterations < 1) throw ConfigError("maximum iterations must be >= 1");
  if (stiffness_mass_term() == 0.0 && effective_shift() == 0.0)
    throw ConfigError("K + sM is only semidefinite: use elliptic regularization with eps > 0 or a shift s > 0");
}

double ProblemConfig::effective_sigma() const {
  return regularization == Regularization::conductivity ? std::max(sigma, eps_reg) : sigma;
}

double ProblemConfig::stiffness_mass_term() const {
  return regularization == Regularization::elliptic ? eps_reg : 0.0;
}

double ProblemConfig::default_shift() const { return stiffness_mass_term() > 0.0 ? 0.0 : nu; }

}  // namespace eddy
