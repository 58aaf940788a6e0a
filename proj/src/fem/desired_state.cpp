#include "eddy/fem/desired_state.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "eddy/la/truncated_svd.hpp"

namespace eddy::fem {

DesiredExample parse_desired_example(std::string_view name) {
  if (name == "ex1") return DesiredExample::ex1;
  if (name == "ex2" || name == "ex2-slice") return DesiredExample::ex2;
  if (name == "file") return DesiredExample::file;
  throw ConfigError("unknown desired-state example '" + std::string(name) + "'");
}

double desired_value(DesiredExample example, double x1, double x2) {
  constexpr double pi = std::numbers::pi;
  switch (example) {
    case DesiredExample::ex1:
      if (!(x1 > x2)) return 0.0;
      return std::sin(2 * pi * x1) + 2 * pi * std::cos(2 * pi * x1) * (x1 - x2);
    case DesiredExample::ex2:
      return std::sin(pi * x1) * std::sin(pi * x2);
    case DesiredExample::file:
      break;
  }
  throw ConfigError("desired_value: file-based desired state has no analytic value");
}

Eigen::MatrixXd sample_desired_state(DesiredExample example, const Mesh2D& mesh, const TimeGrid& grid) {
  grid.validate();
  Eigen::VectorXd values(mesh.num_nodes());
  for (Index i = 0; i < mesh.num_nodes(); ++i) values[i] = desired_value(example, mesh.nodes(i, 0), mesh.nodes(i, 1));
  return values.replicate(1, grid.steps);
}

Eigen::MatrixXd read_desired_state_file(const std::filesystem::path& path, Index n, int steps) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open desired-state file " + path.string());
  Eigen::MatrixXd yd(n, steps);
  std::string line;
  Index row = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (row >= n) throw ConfigError(path.string() + ": more than " + std::to_string(n) + " rows");
    std::istringstream ss(line);
    std::vector<double> values;
    for (double v; ss >> v;) values.push_back(v);
    if (!ss.eof()) throw ConfigError(path.string() + ": row " + std::to_string(row + 1) + " is not numeric");
    if (static_cast<Index>(values.size()) != steps)
      throw ConfigError(path.string() + ": row " + std::to_string(row + 1) + " has " + std::to_string(values.size()) +
                        " columns, expected " + std::to_string(steps));
    for (int m = 0; m < steps; ++m) yd(row, m) = values[m];
    ++row;
  }
  if (row != n) throw ConfigError(path.string() + ": " + std::to_string(row) + " rows, expected " + std::to_string(n));
  return yd;
}

LowRank lowrank_desired(const Eigen::MatrixXd& yd, double tol) {
  if (yd.size() == 0 || yd.norm() == 0.0) return LowRank::zero(yd.rows(), yd.cols());
  Eigen::BDCSVD<Eigen::MatrixXd> svd(yd, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd s = svd.singularValues();
  // singular values at rounding level carry no information
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * s(0);
  const Index k = std::min(la::frobenius_tail_rank<double>(s, tol), Index((s.array() > floor).count()));
  return LowRank(svd.matrixU().leftCols(k), svd.matrixV().leftCols(k) * s.head(k).asDiagonal());
}

}  // namespace eddy::fem
