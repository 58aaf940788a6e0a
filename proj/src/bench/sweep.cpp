#include "eddy/bench/sweep.hpp"

#include <atomic>
#include <fstream>
#include <mutex>
#include <thread>


namespace eddy::bench {

namespace {

template <typename T>
std::vector<T> list_of(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) return {};
  const auto& v = j.at(key);
  if (v.is_array()) return v.get<std::vector<T>>();
  return {v.get<T>()};
}

}  // namespace

void SweepSpec::validate() const {
  if (methods.empty()) throw ConfigError("sweep: method set is empty");
  if (sigmas.empty() || betas.empty() || steps.empty()) throw ConfigError("sweep: sigma, beta and mT need values");
  if (meshes.empty() == matrix_dirs.empty()) throw ConfigError("sweep: give exactly one of mesh and matrices");
  for (double s : sigmas)
    if (!(s >= 0.0)) throw ConfigError("sweep: sigma must be >= 0");
  for (double b : betas)
    if (!(b > 0.0)) throw ConfigError("sweep: beta must be > 0");
  for (int m : steps)
    if (m < 1) throw ConfigError("sweep: mT must be >= 1");
  for (int c : meshes)
    if (c < 1) throw ConfigError("sweep: mesh must be >= 1");
}

SweepSpec parse_sweep_spec(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("sweep spec must be a JSON object");
  SweepSpec s;
  try {
    s.sigmas = list_of<double>(j, "sigma");
    s.betas = list_of<double>(j, "beta");
    s.steps = list_of<int>(j, "mT");
    s.meshes = list_of<int>(j, "mesh");
    for (const auto& d : list_of<std::string>(j, "matrices")) s.matrix_dirs.emplace_back(d);
    for (const auto& m : list_of<std::string>(j, "methods")) s.methods.push_back(parse_method(m));
    ProblemConfig& c = s.base.config;
    c.tol = j.value("tol", c.tol);
    c.trunc_tol = j.value("trunc_tol", c.trunc_tol);
    c.max_iterations = j.value("max_it", c.max_iterations);
    c.nu = j.value("nu", c.nu);
    c.eps_reg = j.value("ereg", c.eps_reg);
    if (j.contains("reg")) c.regularization = parse_regularization(j.at("reg").get<int>());
    if (j.contains("shift")) c.shift = j.at("shift").get<double>();
    s.base.example = fem::parse_desired_example(j.value("example", std::string("ex1")));
    if (j.contains("yd_file")) s.base.yd_file = j.at("yd_file").get<std::string>();
    s.base.k_max = j.value("k_max", s.base.k_max);
    if (j.contains("out")) s.output = j.at("out").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("sweep spec: ") + e.what());
  }
  s.validate();
  return s;
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open sweep spec " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("sweep spec " + path.string() + ": " + e.what());
  }
  return parse_sweep_spec(j);
}

std::vector<SweepPoint> expand(const SweepSpec& spec) {
  std::vector<SweepPoint> points;
  const std::size_t sources = spec.meshes.empty() ? spec.matrix_dirs.size() : spec.meshes.size();
  for (std::size_t src = 0; src < sources; ++src)
    for (int m : spec.steps)
      for (double sigma : spec.sigmas)
        for (double beta : spec.betas)
          for (Method method : spec.methods) {
            SweepPoint pt{spec.base, method};
            if (spec.meshes.empty())
              pt.problem.matrices = spec.matrix_dirs[src];
            else
              pt.problem.mesh = spec.meshes[src];
            pt.problem.grid.steps = m;
            pt.problem.config.sigma = sigma;
            pt.problem.config.beta = beta;
            points.push_back(std::move(pt));
          }
  return points;
}

ResultRow run_point(const SweepPoint& point) {
  const ProblemSpec& ps = point.problem;
  const Index n_guess = ps.mesh ? Index(*ps.mesh + 1) * (*ps.mesh + 1) : 0;
  std::optional<Problem> problem;
  try {
    problem = build_problem(ps);
    const MethodOutcome outcome = run_method(point.method, *problem, ps);
    return make_row(point.method, *problem, outcome.report);
  } catch (const std::exception& e) {
    const Index n = problem ? problem->ops.n() : n_guess;
    return make_failed_row(point.method, n, ps.grid.steps, ps.config.sigma, ps.config.beta, e.what());
  }
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec, int jobs, const std::function<void(const ResultRow&)>& emit) {
  spec.validate();
  if (jobs < 1) throw ConfigError("--jobs must be at least 1");
  const std::vector<SweepPoint> points = expand(spec);
  std::vector<ResultRow> rows(points.size());
  std::vector<char> done(points.size(), 0);
  std::atomic<std::size_t> next{0};
  std::mutex mutex;
  std::size_t emitted = 0;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= points.size()) return;
      ResultRow row = run_point(points[i]);
      std::lock_guard<std::mutex> lock(mutex);
      rows[i] = std::move(row);
      done[i] = 1;
      while (emitted < points.size() && done[emitted]) {
        if (emit) emit(rows[emitted]);
        ++emitted;
      }
    }
  };
  const int threads = std::min<int>(jobs, static_cast<int>(std::max<std::size_t>(points.size(), 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rows;
}

}  // namespace eddy::bench
