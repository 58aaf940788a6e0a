// eddyopt: generate surrogate operators, solve the optimal control problem,
// run parameter sweeps and the dense oracle check.
//
// Exit codes: 0 success, 1 usage or runtime error, 2 solver did not converge.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "eddy/baselines/fminres.hpp"
#include "eddy/bench/problem.hpp"
#include "eddy/bench/result.hpp"
#include "eddy/bench/sweep.hpp"
#include "eddy/bench/verify.hpp"
#include "eddy/la/matrix_market.hpp"

namespace {

using namespace eddy;
using namespace eddy::bench;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNotConverged = 2;

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

struct SolveArgs {
  std::string method;
  int mesh = 0;
  std::string matrices;
  int steps = 0;
  double sigma = 0.0;
  double beta = 0.0;
  double nu = 1.0;
  double shift = 0.0;
  double ereg = 1e-6;
  int reg = 3;
  double tol = 1e-6;
  double trunc_tol = 1e-10;
  int max_it = 500;
  double tau = 0.0;
  int k_max = 50;
  std::string example = "ex1";
  std::string yd_file;
  std::string out;
  std::string factors;
};

int run_solve(const SolveArgs& a, const CLI::App& cmd) {
  const Method method = parse_method(a.method);
  ProblemSpec spec;
  if (cmd.count("--mesh")) spec.mesh = a.mesh;
  if (cmd.count("--matrices")) spec.matrices = a.matrices;
  spec.grid.steps = a.steps;
  if (cmd.count("--tau")) {
    if (!(a.tau > 0.0)) throw ConfigError("--tau must be positive");
    spec.grid.final_time = a.tau * a.steps;
  }
  ProblemConfig& c = spec.config;
  c.sigma = a.sigma;
  c.beta = a.beta;
  c.nu = a.nu;
  c.eps_reg = a.ereg;
  c.regularization = parse_regularization(a.reg);
  if (cmd.count("--shift")) c.shift = a.shift;
  c.tol = a.tol;
  c.trunc_tol = a.trunc_tol;
  c.max_iterations = a.max_it;
  spec.k_max = a.k_max;
  spec.example = fem::parse_desired_example(a.example);
  if (!a.yd_file.empty()) {
    spec.yd_file = a.yd_file;
    if (!cmd.count("--example")) spec.example = fem::DesiredExample::file;
  }
  spec.validate();
  if (c.beta < 1e-12 && method != Method::skpik)
    std::cerr << "warning: beta < 1e-12; the Sylvester form scales with 1/sqrt(beta)\n";

  const Problem problem = build_problem(spec);
  ResultRow row;
  MethodOutcome outcome;
  bool solved = false;
  try {
    outcome = run_method(method, problem, spec);
    row = make_row(method, problem, outcome.report);
    solved = true;
  } catch (const FminresStepError& e) {
    std::cerr << "eddyopt: " << e.what() << "\n";
    row = make_failed_row(method, problem.ops.n(), spec.grid.steps, c.sigma, c.beta, e.what());
    row.residual = e.residual();
  }
  write_text(a.out, to_json(row).dump(2) + "\n");
  if (solved && !a.factors.empty()) {
    std::filesystem::create_directories(a.factors);
    la::mm_write_dense(std::filesystem::path(a.factors) / "X1.mtx", outcome.x.left);
    la::mm_write_dense(std::filesystem::path(a.factors) / "X2.mtx", outcome.x.right);
  }
  return row.converged ? kExitOk : kExitNotConverged;
}

int run_sweep_command(const std::string& spec_path, std::string out, int jobs) {
  const SweepSpec spec = load_sweep_spec(spec_path);
  if (out.empty() && spec.output) out = spec.output->string();
  if (out.empty()) throw ConfigError("sweep needs --out (or \"out\" in the spec)");
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << kCsvHeader << "\n";
  bool all = true;
  run_sweep(spec, jobs, [&](const ResultRow& row) {
    f << to_csv(row) << "\n" << std::flush;
    all = all && row.converged;
    if (!row.error.empty()) std::cerr << "eddyopt: " << row.method << " point failed: " << row.error << "\n";
  });
  nlohmann::ordered_json meta;
  meta["schema_version"] = kSchemaVersion;
  meta["columns"] = kCsvHeader;
  std::ofstream(out + ".meta.json") << meta.dump(2) << "\n";
  return all ? kExitOk : kExitNotConverged;
}

int run_verify_command(const VerifyOptions& options) {
  const VerifyReport report = run_verify(options);
  std::printf("verify n=%ld mT=%d\n", static_cast<long>(report.n), report.steps);
  for (const auto& c : report.checks)
    std::printf("  %-34s %.3e  (limit %.0e)  %s\n", c.name.c_str(), c.value, c.limit, c.passed() ? "ok" : "FAILED");
  std::printf("%s\n", report.passed() ? "all checks passed" : "verification FAILED");
  return report.passed() ? kExitOk : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-rank solvers for all-at-once optimal control of eddy currents"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "write surrogate M.mtx, K.mtx and mesh.json");
  int gen_mesh = 0;
  std::string gen_out;
  gen->add_option("--mesh", gen_mesh, "cells per side")->required();
  gen->add_option("--out", gen_out, "output directory")->required();

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "solve one problem instance");
  solve->add_option("--method", sa.method, "skpik | lrminres | fminres")->required();
  auto* mesh_opt = solve->add_option("--mesh", sa.mesh, "cells per side of the generated surrogate");
  auto* mat_opt = solve->add_option("--matrices", sa.matrices, "directory with M.mtx and K.mtx");
  mesh_opt->excludes(mat_opt);
  solve->add_option("--mT", sa.steps, "number of time steps")->required();
  solve->add_option("--sigma", sa.sigma, "conductivity")->required();
  solve->add_option("--beta", sa.beta, "control cost")->required();
  solve->add_option("--nu", sa.nu, "reluctivity")->capture_default_str();
  solve->add_option("--shift", sa.shift, "shift s of the left coefficient (default: 0 if K is definite, else nu)");
  solve->add_option("--ereg", sa.ereg, "regularization epsilon")->capture_default_str();
  solve->add_option("--reg", sa.reg, "regularization kind: 0 none, 2 conductivity, 3 elliptic")->capture_default_str();
  solve->add_option("--tol", sa.tol, "relative residual tolerance")->capture_default_str();
  solve->add_option("--trunc-tol", sa.trunc_tol, "truncation tolerance")->capture_default_str();
  solve->add_option("--max-it", sa.max_it, "iteration limit")->capture_default_str();
  solve->add_option("--tau", sa.tau, "time step (default 1/mT)");
  solve->add_option("--k-max", sa.k_max, "lrminres rank cap")->capture_default_str();
  solve->add_option("--example", sa.example, "ex1 | ex2 | file")->capture_default_str();
  solve->add_option("--yd-file", sa.yd_file, "desired state table (n rows, mT columns)");
  solve->add_option("--out", sa.out, "result JSON path (default stdout)");
  solve->add_option("--factors", sa.factors, "directory for X1.mtx and X2.mtx");

  auto* sweep = app.add_subcommand("sweep", "run a parameter grid to CSV");
  std::string sweep_spec, sweep_out;
  int jobs = 1;
  sweep->add_option("--spec", sweep_spec, "sweep spec JSON")->required();
  sweep->add_option("--out", sweep_out, "CSV output path");
  sweep->add_option("--jobs", jobs, "worker threads")->capture_default_str();

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "compare the solvers with dense oracles on a small instance");
  verify->add_option("--n", vo.n, "spatial size: 1 or (N+1)^2")->capture_default_str();
  verify->add_option("--mT", vo.steps, "number of time steps")->capture_default_str();
  verify->add_option("--sigma", vo.sigma, "conductivity")->capture_default_str();
  verify->add_option("--beta", vo.beta, "control cost")->capture_default_str();
  bool skip_lrminres = false;
  verify->add_flag("--no-lrminres", skip_lrminres, "skip the lrminres comparison");
  verify->add_flag("--flip-sign", vo.flip_sign)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*gen) {
      write_generated(gen_mesh, gen_out);
      return kExitOk;
    }
    if (*solve) return run_solve(sa, *solve);
    if (*sweep) return run_sweep_command(sweep_spec, sweep_out, jobs);
    if (*verify) {
      vo.with_lrminres = !skip_lrminres;
      return run_verify_command(vo);
    }
  } catch (const std::exception& e) {
    std::cerr << "eddyopt: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
