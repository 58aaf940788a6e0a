#pragma once

#include <filesystem>
#include <string_view>

#include "eddy/fem/config.hpp"
#include "eddy/fem/mesh.hpp"

namespace eddy::fem {

enum class DesiredExample {
  ex1,  // first component of the diagonal-split state, zero on {x1 <= x2}
  ex2,  // 2D slice sin(pi x1) sin(pi x2)
  file,
};

DesiredExample parse_desired_example(std::string_view name);

/// Pointwise value of the analytic examples (time independent).
double desired_value(DesiredExample example, double x1, double x2);

/// n x m_T matrix of nodal values; analytic examples are constant in time.
Eigen::MatrixXd sample_desired_state(DesiredExample example, const Mesh2D& mesh, const TimeGrid& grid);

/// Whitespace-separated table with n rows and m_T columns.
Eigen::MatrixXd read_desired_state_file(const std::filesystem::path& path, Index n, int steps);

/// Y_d ~ Y1 Y2^T with the minimal rank meeting ||Y1 Y2^T - yd||_F <= tol ||yd||_F.
LowRank lowrank_desired(const Eigen::MatrixXd& yd, double tol);

}  // namespace eddy::fem
