#pragma once

#include <filesystem>
#include <stdexcept>

#include "eddy/fem/config.hpp"
#include "eddy/fem/mesh.hpp"

namespace eddy::fem {

class AssemblyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Spatial operators of the semi-discrete state equation.
struct SpaceOperators {
  SpMat mass;       // M, SPD
  SpMat stiffness;  // K (regularization included), symmetric PSD

  Index n() const { return mass.rows(); }
};

using ElementMatrix = Eigen::Matrix3d;

/// P1 element matrices on triangle t (throws AssemblyError on a degenerate triangle).
ElementMatrix p1_mass_element(const Mesh2D& mesh, Index t);
ElementMatrix p1_laplace_element(const Mesh2D& mesh, Index t);

/// Consistent P1 mass matrix.
SpMat assemble_mass(const Mesh2D& mesh);
/// P1 Laplacian (no boundary conditions imposed).
SpMat assemble_laplacian(const Mesh2D& mesh);
/// K = nu * Laplacian + (eps * M under elliptic regularization).
SpMat assemble_stiffness(const Mesh2D& mesh, const ProblemConfig& config);

SpaceOperators make_space_operators(const Mesh2D& mesh, const ProblemConfig& config);

/// Imports DIR/M.mtx and DIR/K.mtx. K.mtx holds the unregularized form;
/// the configured regularization term is added on load.
SpaceOperators load_space_operators(const std::filesystem::path& dir, const ProblemConfig& config);

}  // namespace eddy::fem
