#include "eddy/bench/result.hpp"

#include <cmath>
#include <cstdio>

namespace eddy::bench {

namespace {

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ResultRow make_row(Method method, const Problem& problem, const SolveReport& report) {
  ResultRow row;
  row.method = to_string(method);
  row.n = problem.ops.n();
  row.steps = problem.grid.steps;
  row.sigma = problem.config.sigma;
  row.beta = problem.config.beta;
  row.rank = report.rank;
  row.iterations = report.mean_iterations;
  row.seconds = report.seconds;
  row.residual = report.relative_residual;
  row.converged = report.converged;
  row.p = report.p;
  row.q = report.q;
  return row;
}

ResultRow make_failed_row(Method method, Index n, int steps, double sigma, double beta, std::string error) {
  ResultRow row;
  row.method = to_string(method);
  row.n = n;
  row.steps = steps;
  row.sigma = sigma;
  row.beta = beta;
  row.residual = std::nan("");
  row.error = std::move(error);
  return row;
}

nlohmann::ordered_json to_json(const ResultRow& row) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["method"] = row.method;
  j["n"] = row.n;
  j["mT"] = row.steps;
  j["sigma"] = row.sigma;
  j["beta"] = row.beta;
  j["rank"] = row.rank;
  j["iters"] = row.iterations;
  j["seconds"] = row.seconds;
  if (std::isnan(row.residual))
    j["residual"] = nullptr;
  else
    j["residual"] = row.residual;
  j["converged"] = row.converged;
  j["p"] = row.p;
  j["q"] = row.q;
  if (!row.error.empty()) j["error"] = row.error;
  return j;
}

std::string to_csv(const ResultRow& row) {
  return row.method + "," + std::to_string(row.n) + "," + std::to_string(row.steps) + "," + number(row.sigma) + "," +
         number(row.beta) + "," + std::to_string(row.rank) + "," + number(row.iterations) + "," +
         number(row.seconds) + "," + number(row.residual) + "," + (row.converged ? "true" : "false");
}

}  // namespace eddy::bench
