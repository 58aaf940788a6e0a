#pragma once

#include <iosfwd>
#include <json.hpp>
#include <string>

#include "eddy/bench/problem.hpp"

namespace eddy::bench {

struct ResultRow {
  std::string method;
  Index n = 0;
  int steps = 0;
  double sigma = 0.0;
  double beta = 0.0;
  Index rank = 0;
  double iterations = 0.0;  // mean per time step for fminres
  double seconds = 0.0;
  double residual = 0.0;
  bool converged = false;
  Index p = 0;
  Index q = 0;
  std::string error;  // set when the point failed before producing a solution
};

ResultRow make_row(Method method, const Problem& problem, const SolveReport& report);
ResultRow make_failed_row(Method method, Index n, int steps, double sigma, double beta, std::string error);

nlohmann::ordered_json to_json(const ResultRow& row);

inline constexpr const char* kCsvHeader = "method,n,mT,sigma,beta,rank,iters,seconds,residual,converged";

/// One CSV record (no trailing newline); doubles keep full precision so
/// repeated runs compare byte for byte outside the seconds column.
std::string to_csv(const ResultRow& row);

}  // namespace eddy::bench
