#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "eddy/bench/result.hpp"
#include "eddy/bench/sweep.hpp"
#include "eddy/fem/assembly.hpp"
#include "eddy/fem/desired_state.hpp"
#include "eddy/fem/mesh.hpp"
#include "eddy/la/matrix_market.hpp"
#include "eddy/reformulate/sylvester_problem.hpp"
#include "eddy/skpik/skpik.hpp"
#include "json.hpp"

using namespace eddy;
using Eigen::MatrixXd;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(EDDYOPT_EXE) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  for (std::size_t got; (got = fread(buf.data(), 1, buf.size(), pipe)) > 0;) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("eddy_bench_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream in(p);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST(Generate, WritesOperators) {
  const fs::path a = scratch("gen_a"), b = scratch("gen_b");
  ASSERT_EQ(run("generate --mesh 2 --out " + a.string()).code, 0);
  ASSERT_EQ(run("generate --mesh 2 --out " + b.string()).code, 0);
  const SpMat m = la::mm_read(a / "M.mtx");
  EXPECT_EQ(m.rows(), 9);
  EXPECT_EQ(m.cols(), 9);
  EXPECT_GT(Eigen::SelfAdjointEigenSolver<MatrixXd>(MatrixXd(m)).eigenvalues().minCoeff(), 0.0);
  for (const char* f : {"M.mtx", "K.mtx", "mesh.json"}) EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  const auto meta = nlohmann::json::parse(slurp(a / "mesh.json"));
  EXPECT_EQ(meta.at("n").get<int>(), 9);
  EXPECT_NEAR(meta.at("h").get<double>(), std::sqrt(2.0) / 2, 1e-15);
}

TEST(Solve, ConvergesAndResidualReproduces) {
  const fs::path dir = scratch("solve");
  const CliRun r = run("solve --method skpik --mesh 8 --mT 16 --sigma 1 --beta 1e-4 --factors " + dir.string());
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.at("converged").get<bool>());
  EXPECT_EQ(j.at("schema_version").get<int>(), bench::kSchemaVersion);
  EXPECT_EQ(j.at("n").get<int>(), 81);
  const double residual = j.at("residual").get<double>();
  EXPECT_LE(residual, 1e-6);

  const MatrixXd x1 = la::mm_read_dense(dir / "X1.mtx"), x2 = la::mm_read_dense(dir / "X2.mtx");
  EXPECT_EQ(x1.cols(), j.at("rank").get<int>());
  ProblemConfig config;
  config.sigma = 1;
  config.beta = 1e-4;
  const TimeGrid grid{16, 1.0};
  const fem::Mesh2D mesh = fem::build_mesh(8);
  const auto ops = fem::make_space_operators(mesh, config);
  const MatrixXd yd = fem::sample_desired_state(fem::DesiredExample::ex1, mesh, grid);
  const SylvesterProblem p = make_sylvester_problem(ops, config, grid, fem::lowrank_desired(yd, 1e-12));
  EXPECT_NEAR(factored_residual(x1, x2, p), residual, 1e-12);
}

TEST(Solve, ImportedMatricesMatchGenerated) {
  const fs::path dir = scratch("import");
  ASSERT_EQ(run("generate --mesh 6 --out " + dir.string()).code, 0);
  const auto a = nlohmann::json::parse(run("solve --method skpik --mesh 6 --mT 8 --sigma 1 --beta 1e-2").out);
  const auto b = nlohmann::json::parse(
      run("solve --method skpik --matrices " + dir.string() + " --mT 8 --sigma 1 --beta 1e-2").out);
  EXPECT_EQ(a.at("rank"), b.at("rank"));
  EXPECT_EQ(a.at("iters"), b.at("iters"));
  EXPECT_NEAR(a.at("residual").get<double>(), b.at("residual").get<double>(), 1e-14);
}

TEST(Solve, FminresAgreesWithSkpikForOneStep) {
  const fs::path fa = scratch("fm_a"), fb = scratch("fm_b");
  const std::string common = " --mesh 6 --mT 1 --sigma 1 --beta 1e-2 --tol 1e-10 --factors ";
  ASSERT_EQ(run("solve --method skpik" + common + fa.string()).code, 0);
  ASSERT_EQ(run("solve --method fminres" + common + fb.string()).code, 0);
  const MatrixXd xa = la::mm_read_dense(fa / "X1.mtx") * la::mm_read_dense(fa / "X2.mtx").transpose();
  const MatrixXd xb = la::mm_read_dense(fb / "X1.mtx") * la::mm_read_dense(fb / "X2.mtx").transpose();
  EXPECT_LE((xa - xb).norm(), 1e-5 * xa.norm());
}

TEST(Solve, LrminresRuns) {
  const CliRun r = run("solve --method lrminres --mesh 4 --mT 8 --sigma 1 --beta 1e-2");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(nlohmann::json::parse(r.out).at("method"), "lrminres");
}

TEST(Solve, FileTarget) {
  const fs::path dir = scratch("file");
  {
    std::ofstream out(dir / "yd.txt");
    for (int i = 0; i < 9; ++i) out << i << " " << 2 * i << "\n";
  }
  const CliRun r = run("solve --method skpik --mesh 2 --mT 2 --sigma 1 --beta 1e-2 --example file --yd-file " +
                    (dir / "yd.txt").string());
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(run("solve --method skpik --mesh 3 --mT 2 --sigma 1 --beta 1e-2 --example file --yd-file " +
                (dir / "yd.txt").string()).code,
            1);
}

TEST(ExitCodes, Exhaustive) {
  EXPECT_EQ(run("solve --method skpik --mesh 4 --mT 4 --sigma 1 --beta 0").code, 1);
  EXPECT_EQ(run("solve --method skpik --mesh 4 --mT 4 --sigma -1 --beta 1e-2").code, 1);
  EXPECT_EQ(run("solve --method newton --mesh 4 --mT 4 --sigma 1 --beta 1e-2").code, 1);
  EXPECT_EQ(run("solve --method skpik --mT 4 --sigma 1 --beta 1e-2").code, 1);
  EXPECT_EQ(run("solve --method skpik --mesh 4 --matrices /tmp --mT 4 --sigma 1 --beta 1e-2").code, 1);
  EXPECT_EQ(run("solve --method skpik --matrices /nonexistent --mT 4 --sigma 1 --beta 1e-2").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("solve --method skpik --mesh 8 --mT 16 --sigma 1 --beta 1e-4 --tol 1e-12 --max-it 1").code, 2);
  EXPECT_EQ(run("solve --method lrminres --mesh 8 --mT 16 --sigma 1 --beta 1e-4 --max-it 1").code, 2);
  EXPECT_EQ(run("solve --method fminres --mesh 8 --mT 4 --sigma 1 --beta 1e-4 --tol 1e-12 --max-it 1").code, 2);
}

TEST(Sweep, RowsInSpecOrderAndDeterministic) {
  const fs::path dir = scratch("sweep");
  {
    std::ofstream spec(dir / "spec.json");
    spec << R"({"sigma": [1], "beta": [1e-2, 1e-4], "mT": [8], "mesh": [4], "methods": ["skpik", "lrminres"]})";
  }
  ASSERT_EQ(run("sweep --spec " + (dir / "spec.json").string() + " --out " + (dir / "a.csv").string() + " --jobs 2")
                .code,
            0);
  ASSERT_EQ(run("sweep --spec " + (dir / "spec.json").string() + " --out " + (dir / "b.csv").string()).code, 0);
  const auto a = read_csv(dir / "a.csv"), b = read_csv(dir / "b.csv");
  ASSERT_EQ(a.size(), 5u);
  EXPECT_EQ(slurp(dir / "a.csv").substr(0, std::string(bench::kCsvHeader).size()), bench::kCsvHeader);
  const std::array<std::pair<const char*, const char*>, 4> order{
      {{"skpik", "0.01"}, {"lrminres", "0.01"}, {"skpik", "0.0001"}, {"lrminres", "0.0001"}}};
  for (std::size_t i = 1; i < a.size(); ++i) {
    ASSERT_EQ(a[i].size(), 10u);
    EXPECT_EQ(a[i][0], order[i - 1].first);
    EXPECT_EQ(std::stod(a[i][4]), std::stod(order[i - 1].second));
    EXPECT_EQ(a[i][9], "true");
    for (int c : {0, 1, 2, 3, 4, 5, 6, 8, 9}) EXPECT_EQ(a[i][c], b[i][c]) << "row " << i << " column " << c;
  }
  const auto meta = nlohmann::json::parse(slurp(dir / "a.csv.meta.json"));
  EXPECT_EQ(meta.at("schema_version").get<int>(), bench::kSchemaVersion);
}

TEST(Sweep, FailuresBecomeRows) {
  const fs::path dir = scratch("sweep_fail");
  {
    std::ofstream spec(dir / "spec.json");
    spec << R"({"sigma": [1], "beta": [1e-2], "mT": [4], "mesh": [4], "methods": ["skpik"], "tol": 1e-14, "max_it": 1})";
  }
  EXPECT_EQ(run("sweep --spec " + (dir / "spec.json").string() + " --out " + (dir / "a.csv").string()).code, 2);
  const auto rows = read_csv(dir / "a.csv");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][9], "false");
  std::ofstream(dir / "bad.json") << R"({"sigma": [1], "beta": [0], "mT": [4], "mesh": [4], "methods": ["skpik"]})";
  EXPECT_EQ(run("sweep --spec " + (dir / "bad.json").string() + " --out " + (dir / "b.csv").string()).code, 1);
}

TEST(Verify, ExitCodes) {
  EXPECT_EQ(run("verify").code, 0);
  EXPECT_EQ(run("verify --n 1 --mT 1").code, 0);
  EXPECT_EQ(run("verify --flip-sign").code, 1);
  EXPECT_EQ(run("verify --n 7").code, 1);
}

TEST(ResultRowTest, JsonAndCsv) {
  bench::ResultRow row;
  row.method = "skpik";
  row.n = 9;
  row.steps = 2;
  row.sigma = 1;
  row.beta = 0.25;
  row.rank = 3;
  row.iterations = 4;
  row.residual = 0.5;
  row.converged = true;
  EXPECT_EQ(bench::to_csv(row).substr(0, 28), "skpik,9,2,1,0.25,3,4,0,0.5,t");
  const auto j = bench::to_json(row);
  EXPECT_EQ(j.at("rank").get<int>(), 3);
  row.residual = std::nan("");
  EXPECT_TRUE(bench::to_json(row).at("residual").is_null());
}
