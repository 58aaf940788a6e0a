#pragma once

#include <string>
#include <vector>

#include "eddy/la/types.hpp"

namespace eddy::bench {

struct VerifyOptions {
  Index n = 25;  // (N + 1)^2 nodes of an N x N mesh, or 1 for the scalar instance (sigma = beta = 1)
  int steps = 4;
  double sigma = 1.0;
  double beta = 1e-2;
  double limit = 1e-6;
  bool with_lrminres = true;
  bool flip_sign = false;  // negative control: corrupts the solver's right-hand side
};

struct VerifyCheck {
  std::string name;
  double value = 0.0;
  double limit = 0.0;

  bool passed() const { return value <= limit; }
};

struct VerifyReport {
  Index n = 0;
  int steps = 0;
  std::vector<VerifyCheck> checks;

  bool passed() const;
};

/// Dense oracle comparison on a small instance: the all-at-once solve
/// against skpik (and lrminres), the elimination of the control, and the
/// split Kronecker form against the Sylvester form.
VerifyReport run_verify(const VerifyOptions& options);

}  // namespace eddy::bench
