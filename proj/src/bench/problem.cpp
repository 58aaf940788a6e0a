#include "eddy/bench/problem.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>

#include "eddy/baselines/fminres.hpp"
#include "eddy/baselines/lrminres.hpp"
#include "eddy/fem/mesh.hpp"
#include "eddy/la/matrix_market.hpp"
#include "eddy/reformulate/sylvester_problem.hpp"
#include "eddy/skpik/skpik.hpp"

namespace eddy::bench {

Method parse_method(std::string_view name) {
  if (name == "skpik") return Method::skpik;
  if (name == "lrminres") return Method::lrminres;
  if (name == "fminres") return Method::fminres;
  throw ConfigError("unknown method '" + std::string(name) + "' (expected skpik, lrminres or fminres)");
}

std::string to_string(Method method) {
  switch (method) {
    case Method::skpik: return "skpik";
    case Method::lrminres: return "lrminres";
    case Method::fminres: return "fminres";
  }
  return "?";
}

void ProblemSpec::validate() const {
  if (mesh.has_value() == matrices.has_value()) throw ConfigError("exactly one of --mesh and --matrices is required");
  if (mesh && *mesh < 1) throw ConfigError("--mesh must be at least 1");
  grid.validate();
  config.validate();
  if (example == fem::DesiredExample::file && !yd_file) throw ConfigError("--example file requires --yd-file");
  if (yd_file && example != fem::DesiredExample::file)
    throw ConfigError("--yd-file is only used with --example file");
  if (k_max < 1) throw ConfigError("k_max must be at least 1");
}

Problem build_problem(const ProblemSpec& spec) {
  spec.validate();
  Problem p;
  p.config = spec.config;
  p.grid = spec.grid;
  std::optional<fem::Mesh2D> mesh;
  if (spec.mesh) {
    mesh = fem::build_mesh(*spec.mesh);
    p.ops = fem::make_space_operators(*mesh, spec.config);
  } else {
    p.ops = fem::load_space_operators(*spec.matrices, spec.config);
    if (auto info = read_mesh_info(*spec.matrices)) {
      mesh = fem::build_mesh(info->cells_per_side);
      if (mesh->num_nodes() != p.ops.n()) mesh.reset();
    }
  }
  if (spec.example == fem::DesiredExample::file) {
    p.yd = fem::read_desired_state_file(*spec.yd_file, p.ops.n(), spec.grid.steps);
  } else {
    if (!mesh)
      throw ConfigError("imported matrices carry no mesh (mesh.json missing or inconsistent); use --example file");
    p.yd = fem::sample_desired_state(spec.example, *mesh, spec.grid);
  }
  p.yd_lowrank = fem::lowrank_desired(p.yd, spec.yd_rank_tol);
  return p;
}

MethodOutcome run_method(Method method, const Problem& problem, const ProblemSpec& spec) {
  const ProblemConfig& c = problem.config;
  MethodOutcome out;
  switch (method) {
    case Method::skpik: {
      const SylvesterProblem sylvester = make_sylvester_problem(problem.ops, c, problem.grid, problem.yd_lowrank);
      SkpikOptions options;
      options.tol = c.tol;
      options.trunc_tol = c.trunc_tol;
      options.max_sweeps = c.max_iterations;
      auto result = skpik_solve(sylvester, options);
      out.x = std::move(result.x);
      out.report = std::move(result.report);
      break;
    }
    case Method::lrminres: {
      LrminresOptions options;
      options.tol = c.tol;
      options.trunc_tol = c.trunc_tol;
      options.k_max = spec.k_max;
      options.max_iterations = c.max_iterations;
      auto result = lrminres_solve(problem.ops, c, problem.grid, problem.yd_lowrank, options);
      out.x = as_sylvester_unknown(result.x);
      out.report = std::move(result.report);
      break;
    }
    case Method::fminres: {
      auto result = fminres_solve(problem.ops, c, problem.grid, problem.yd, c.tol, c.max_iterations);
      const Index n = problem.ops.n(), m = problem.grid.steps;
      Eigen::MatrixXd x(n, 2 * m);
      x << result.state, result.multiplier / std::sqrt(c.beta);
      out.x = LowRank(std::move(x), Eigen::MatrixXd::Identity(2 * m, 2 * m));
      out.report = std::move(result.report);
      break;
    }
  }
  return out;
}

void write_generated(int cells_per_side, const std::filesystem::path& out_dir) {
  if (cells_per_side < 1) throw ConfigError("--mesh must be at least 1");
  std::filesystem::create_directories(out_dir);
  const fem::Mesh2D mesh = fem::build_mesh(cells_per_side);
  la::mm_write(out_dir / "M.mtx", fem::assemble_mass(mesh));
  la::mm_write(out_dir / "K.mtx", fem::assemble_laplacian(mesh));
  nlohmann::ordered_json meta;
  meta["schema_version"] = kSchemaVersion;
  meta["n"] = mesh.num_nodes();
  meta["h"] = mesh.h;
  meta["cells_per_side"] = cells_per_side;
  std::ofstream f(out_dir / "mesh.json");
  if (!f) throw std::runtime_error("cannot write " + (out_dir / "mesh.json").string());
  f << meta.dump(2) << "\n";
}

std::optional<MeshInfo> read_mesh_info(const std::filesystem::path& dir) {
  std::ifstream f(dir / "mesh.json");
  if (!f) return std::nullopt;
  const auto j = nlohmann::json::parse(f);
  MeshInfo info;
  info.n = j.at("n").get<Index>();
  info.h = j.at("h").get<double>();
  info.cells_per_side = j.at("cells_per_side").get<int>();
  return info;
}

}  // namespace eddy::bench
