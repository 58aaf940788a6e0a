#include "eddy/fem/assembly.hpp"

#include <vector>

#include "eddy/la/matrix_market.hpp"

namespace eddy::fem {

namespace {

double checked_area(const Mesh2D& mesh, Index t) {
  const double area = triangle_area(mesh, t);
  if (!(area > 1e-14 * mesh.h * mesh.h)) {
    throw AssemblyError("degenerate or inverted triangle " + std::to_string(t) + " (area " + std::to_string(area) +
                        ")");
  }
  return area;
}

template <typename ElementFn>
SpMat assemble(const Mesh2D& mesh, ElementFn&& element) {
  std::vector<Triplet> triplets;
  triplets.reserve(9 * mesh.num_triangles());
  for (Index t = 0; t < mesh.num_triangles(); ++t) {
    const ElementMatrix local = element(mesh, t);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) triplets.emplace_back(mesh.triangles(t, a), mesh.triangles(t, b), local(a, b));
  }
  SpMat global(mesh.num_nodes(), mesh.num_nodes());
  global.setFromTriplets(triplets.begin(), triplets.end());
  global.makeCompressed();
  return global;
}

}  // namespace

ElementMatrix p1_mass_element(const Mesh2D& mesh, Index t) {
  const double area = checked_area(mesh, t);
  ElementMatrix m;
  m << 2, 1, 1, 1, 2, 1, 1, 1, 2;
  return m * (area / 12.0);
}

ElementMatrix p1_laplace_element(const Mesh2D& mesh, Index t) {
  const double area = checked_area(mesh, t);
  Eigen::Matrix<double, 3, 2> x;
  for (int a = 0; a < 3; ++a) x.row(a) = mesh.nodes.row(mesh.triangles(t, a));
  // Gradients of the barycentric coordinates: rotated opposite edges / (2 area).
  Eigen::Matrix<double, 3, 2> grad;
  for (int a = 0; a < 3; ++a) {
    const auto& p = x.row((a + 1) % 3);
    const auto& q = x.row((a + 2) % 3);
    grad(a, 0) = (p(1) - q(1)) / (2 * area);
    grad(a, 1) = (q(0) - p(0)) / (2 * area);
  }
  return area * grad * grad.transpose();
}

SpMat assemble_mass(const Mesh2D& mesh) { return assemble(mesh, p1_mass_element); }

SpMat assemble_laplacian(const Mesh2D& mesh) { return assemble(mesh, p1_laplace_element); }

SpMat assemble_stiffness(const Mesh2D& mesh, const ProblemConfig& config) {
  if (!(config.nu > 0.0)) throw AssemblyError("reluctivity nu must be positive");
  SpMat k = config.nu * assemble_laplacian(mesh);
  if (const double eps = config.stiffness_mass_term(); eps > 0.0) k += eps * assemble_mass(mesh);
  k.makeCompressed();
  return k;
}

SpaceOperators make_space_operators(const Mesh2D& mesh, const ProblemConfig& config) {
  return {assemble_mass(mesh), assemble_stiffness(mesh, config)};
}

SpaceOperators load_space_operators(const std::filesystem::path& dir, const ProblemConfig& config) {
  SpaceOperators ops{la::mm_read(dir / "M.mtx"), la::mm_read(dir / "K.mtx")};
  if (ops.mass.rows() != ops.mass.cols() || ops.stiffness.rows() != ops.stiffness.cols() ||
      ops.mass.rows() != ops.stiffness.rows())
    throw AssemblyError("imported M and K must be square and of equal size");
  ops.stiffness = config.nu * ops.stiffness;
  if (const double eps = config.stiffness_mass_term(); eps > 0.0) ops.stiffness += eps * ops.mass;
  ops.stiffness.makeCompressed();
  return ops;
}

}  // namespace eddy::fem
