#pragma once

// Small problem instances shared by the solver tests.

#include <random>

#include "eddy/fem/assembly.hpp"
#include "eddy/fem/config.hpp"
#include "eddy/fem/desired_state.hpp"
#include "eddy/fem/mesh.hpp"

namespace fixture {

struct Instance {
  eddy::fem::SpaceOperators ops;
  eddy::ProblemConfig config;
  eddy::TimeGrid grid;
  Eigen::MatrixXd yd;
};

/// P1 operators on a cells x cells mesh with the first example as target.
inline Instance p1(int cells, int steps, double sigma, double beta) {
  Instance in;
  in.config.sigma = sigma;
  in.config.beta = beta;
  in.grid = eddy::TimeGrid{steps, 1.0};
  const eddy::fem::Mesh2D mesh = eddy::fem::build_mesh(cells);
  in.ops = eddy::fem::make_space_operators(mesh, in.config);
  in.yd = eddy::fem::sample_desired_state(eddy::fem::DesiredExample::ex1, mesh, in.grid);
  return in;
}

inline eddy::SpMat scaled_identity(eddy::Index n, double value) {
  eddy::SpMat a(n, n);
  a.setIdentity();
  return value * a;
}

/// M = [1], K = [2], sigma = tau = beta = 1, Y_d = [y].
inline Instance scalar(double y = 1.0) {
  Instance in;
  in.ops = {scaled_identity(1, 1.0), scaled_identity(1, 2.0)};
  in.config.sigma = 1.0;
  in.config.beta = 1.0;
  in.config.shift = 0.0;
  in.grid = eddy::TimeGrid{1, 1.0};
  in.yd = Eigen::MatrixXd::Constant(1, 1, y);
  return in;
}

inline Eigen::MatrixXd random_matrix(std::mt19937& rng, eddy::Index r, eddy::Index c) {
  std::normal_distribution<double> d;
  Eigen::MatrixXd m(r, c);
  for (eddy::Index i = 0; i < m.size(); ++i) m.data()[i] = d(rng);
  return m;
}

}  // namespace fixture
