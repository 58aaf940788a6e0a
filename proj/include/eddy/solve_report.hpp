#pragma once

#include <vector>

#include "eddy/la/types.hpp"

namespace eddy {

/// What every solver reports, whatever its iteration means.
struct SolveReport {
  Index rank = 0;
  int iterations = 0;  // sweeps (skpik), MINRES steps, or mean steps per time step (fminres)
  double mean_iterations = 0.0;
  double relative_residual = 0.0;
  double seconds = 0.0;
  bool converged = false;
  bool zero_rhs = false;  // residual is absolute because the right-hand side vanishes
  bool stagnated = false;
  std::vector<double> residual_history;
  Index p = 0;
  Index q = 0;
};

}  // namespace eddy
