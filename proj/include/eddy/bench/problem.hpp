#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "eddy/fem/assembly.hpp"
#include "eddy/fem/config.hpp"
#include "eddy/fem/desired_state.hpp"
#include "eddy/solve_report.hpp"

namespace eddy::bench {

enum class Method { skpik, lrminres, fminres };

Method parse_method(std::string_view name);
std::string to_string(Method method);

/// Everything needed to build one problem instance.
struct ProblemSpec {
  std::optional<int> mesh;                       // cells per side of the generated surrogate
  std::optional<std::filesystem::path> matrices; // directory with M.mtx, K.mtx
  TimeGrid grid;
  ProblemConfig config;
  fem::DesiredExample example = fem::DesiredExample::ex1;
  std::optional<std::filesystem::path> yd_file;
  double yd_rank_tol = 1e-12;  // relative accuracy of the factored desired state
  Index k_max = 50;            // lrminres rank cap

  /// Rejects inconsistent flag combinations before anything is assembled.
  void validate() const;
};

struct Problem {
  fem::SpaceOperators ops;
  ProblemConfig config;
  TimeGrid grid;
  Eigen::MatrixXd yd;  // n x m_T
  LowRank yd_lowrank;
};

Problem build_problem(const ProblemSpec& spec);

/// Solution in the Sylvester unknown X = [Y, Lambda / sqrt(beta)].
struct MethodOutcome {
  LowRank x;
  SolveReport report;
};

/// Runs one method. Per-step MINRES failures of fminres propagate.
MethodOutcome run_method(Method method, const Problem& problem, const ProblemSpec& spec);

/// Sidecar written next to generated matrices.
struct MeshInfo {
  Index n = 0;
  double h = 0.0;
  int cells_per_side = 0;
};

void write_generated(int cells_per_side, const std::filesystem::path& out_dir);
std::optional<MeshInfo> read_mesh_info(const std::filesystem::path& dir);

inline constexpr int kSchemaVersion = 1;

}  // namespace eddy::bench
