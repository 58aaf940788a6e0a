#include "eddy/fem/mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace eddy::fem {

Mesh2D build_mesh(int cells_per_side) {
  if (cells_per_side < 1) throw std::invalid_argument("build_mesh: cells_per_side must be >= 1");
  const int n = cells_per_side;
  const int side = n + 1;
  Mesh2D mesh;
  mesh.cells_per_side = n;
  mesh.h = std::sqrt(2.0) / n;
  mesh.nodes.resize(side * side, 2);
  for (int j = 0; j < side; ++j)
    for (int i = 0; i < side; ++i) mesh.nodes.row(j * side + i) << double(i) / n, double(j) / n;

  mesh.triangles.resize(2 * n * n, 3);
  int t = 0;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int a = j * side + i, b = a + 1, c = a + side + 1, d = a + side;
      mesh.triangles.row(t++) << a, b, c;
      mesh.triangles.row(t++) << a, c, d;
    }
  }
  return mesh;
}

double triangle_area(const Mesh2D& mesh, Index t) {
  const auto p0 = mesh.nodes.row(mesh.triangles(t, 0));
  const auto p1 = mesh.nodes.row(mesh.triangles(t, 1));
  const auto p2 = mesh.nodes.row(mesh.triangles(t, 2));
  return 0.5 * ((p1(0) - p0(0)) * (p2(1) - p0(1)) - (p2(0) - p0(0)) * (p1(1) - p0(1)));
}

}  // namespace eddy::fem
