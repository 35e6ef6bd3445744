#pragma once

#include <vector>

#include "heatshape/shape_coefficients.hpp"

namespace heatshape {

/// One boundary point with the geometric quantities the layer potentials
/// need.  The unit normal points outward of the difference domain Omega_t:
/// into the void on the interior component, away from the origin on the
/// fixed exterior circle.  curvature is signed consistently with that
/// orientation (+1/r for a circular void, -1/R on the exterior circle).
struct BoundarySample {
  double point[2] = {0.0, 0.0};
  double unit_normal[2] = {0.0, 0.0};
  double arc_element = 0.0;      ///< |d gamma / d phi|
  double normal_velocity = 0.0;  ///< <d gamma/dt, n>
  double curvature = 0.0;
};

/// Interior-boundary sample of the star-shaped parametrization
/// gamma(t,phi) = w(t,phi) (cos phi, sin phi).  w must be positive.
BoundarySample boundary_sample(const ShapeCoefficients& coeffs, double t,
                               double phi);

/// Fixed exterior circle sample.
BoundarySample exterior_sample(double radius, double phi);

/// Node data of one time level, both components concatenated:
/// interior nodes [0, n_space), exterior nodes [n_space, 2*n_space).
struct LevelNodes {
  std::vector<double> px, py;  ///< positions
  std::vector<double> nx, ny;  ///< unit normals
  std::vector<double> jac;     ///< arc elements
  std::vector<double> vel;     ///< normal velocities
  std::vector<double> curv;    ///< signed curvatures

  void resize(int n) {
    px.assign(static_cast<std::size_t>(n), 0.0);
    py.assign(static_cast<std::size_t>(n), 0.0);
    nx.assign(static_cast<std::size_t>(n), 0.0);
    ny.assign(static_cast<std::size_t>(n), 0.0);
    jac.assign(static_cast<std::size_t>(n), 0.0);
    vel.assign(static_cast<std::size_t>(n), 0.0);
    curv.assign(static_cast<std::size_t>(n), 0.0);
  }
};

/// Space-time quadrature grid: equispaced angles phi_i = 2 pi i / n_space
/// on both components at every time level t_n = n h.
class SpaceTimeMesh {
 public:
  int n_time = 0;
  int n_space = 0;
  double step = 0.0;
  double horizon = 0.0;
  double exterior_radius = 0.0;
  std::vector<LevelNodes> levels;  ///< n_time + 1 entries

  int n_nodes() const { return 2 * n_space; }
  int interior_begin() const { return 0; }
  int exterior_begin() const { return n_space; }
  double time_of(int level) const { return step * level; }
  double angle_of(int node) const;
  bool is_interior_node(int node) const { return node < n_space; }

  /// Time-reversed copy: level order flipped, normal velocities negated.
  SpaceTimeMesh reversed_in_time() const;
};

/// Samples the interior component from the coefficients and the fixed
/// exterior circle on the shared (n_time+1) x n_space grid; the angular
/// evaluation of the radius goes through the FFT.  Throws geometry_fault
/// if any node violates 0 < w < exterior_radius.
SpaceTimeMesh build_mesh(const ShapeCoefficients& coeffs,
                         double exterior_radius, int n_time, int n_space);

}  // namespace heatshape
