#pragma once

#include <filesystem>
#include <functional>
#include <json.hpp>
#include <optional>
#include <vector>

#include "eddy/bench/result.hpp"

namespace eddy::bench {

/// Cartesian parameter grid. JSON keys: "sigma", "beta", "mT", "mesh" or
/// "matrices", "methods", and optionally "tol", "trunc_tol", "max_it", "nu",
/// "ereg", "reg", "shift", "example", "yd_file", "k_max", "out".
struct SweepSpec {
  std::vector<double> sigmas;
  std::vector<double> betas;
  std::vector<int> steps;
  std::vector<int> meshes;
  std::vector<std::filesystem::path> matrix_dirs;
  std::vector<Method> methods;
  ProblemSpec base;  // tolerances, regularization and data source shared by every point
  std::optional<std::filesystem::path> output;

  void validate() const;
};

SweepSpec parse_sweep_spec(const nlohmann::json& j);
SweepSpec load_sweep_spec(const std::filesystem::path& path);

struct SweepPoint {
  ProblemSpec problem;
  Method method;
};

/// Points in the order mesh, mT, sigma, beta, method (outermost first).
std::vector<SweepPoint> expand(const SweepSpec& spec);

/// Runs every point on `jobs` workers. A failing point becomes a row with
/// converged = false. `emit` receives rows in spec order as soon as every
/// earlier row is done.
std::vector<ResultRow> run_sweep(const SweepSpec& spec, int jobs,
                                 const std::function<void(const ResultRow&)>& emit = {});

/// Solve one point; never throws for solver-side failures.
ResultRow run_point(const SweepPoint& point);

}  // namespace eddy::bench
