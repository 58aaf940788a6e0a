#pragma once

#include "eddy/la/types.hpp"

namespace eddy::fem {

/// Triangulation of the unit square.
struct Mesh2D {
  Eigen::Matrix<double, Eigen::Dynamic, 2, Eigen::RowMajor> nodes;
  Eigen::Matrix<int, Eigen::Dynamic, 3, Eigen::RowMajor> triangles;  // counter-clockwise
  double h = 0.0;                                                    // longest edge
  int cells_per_side = 0;

  Index num_nodes() const { return nodes.rows(); }
  Index num_triangles() const { return triangles.rows(); }
};

/// Uniform mesh: each of the N x N squares is cut along its (x1 = x2)-parallel
/// diagonal, so the interface {x1 = x2} is resolved by mesh edges.
Mesh2D build_mesh(int cells_per_side);

/// Signed area of triangle t.
double triangle_area(const Mesh2D& mesh, Index t);

}  // namespace eddy::fem
