#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "heatshape/errors.hpp"
#include "heatshape/mesh.hpp"

namespace heatshape {

/// Endpoint behavior of a space-time boundary field after reversing time:
/// none for smooth traces, inverse_sqrt for adjoint-side Neumann densities
/// whose values store the smooth cofactor chi with trace = chi / sqrt(tau).
enum class SingularityExponent { none, inverse_sqrt };

/// Scalar samples on the space-time node grid (Dirichlet data, densities,
/// Neumann traces).  Layout matches SpaceTimeMesh: level-major, interior
/// nodes before exterior nodes within a level.
struct BoundaryField {
  int n_time = 0;
  int n_space = 0;
  SingularityExponent exponent = SingularityExponent::none;
  std::vector<double> values;

  BoundaryField() = default;
  BoundaryField(int nt, int ns)
      : n_time(nt), n_space(ns),
        values(static_cast<std::size_t>(nt + 1) * static_cast<std::size_t>(2 * ns), 0.0) {}

  static BoundaryField zeros_like(const SpaceTimeMesh& mesh) {
    return BoundaryField(mesh.n_time, mesh.n_space);
  }

  int n_nodes() const { return 2 * n_space; }

  double* level(int n) {
    return values.data() + static_cast<std::size_t>(n) * static_cast<std::size_t>(n_nodes());
  }
  const double* level(int n) const {
    return values.data() + static_cast<std::size_t>(n) * static_cast<std::size_t>(n_nodes());
  }

  double& at(int n, int node) { return level(n)[node]; }
  double at(int n, int node) const { return level(n)[node]; }

  bool shape_matches(const SpaceTimeMesh& mesh) const {
    return n_time == mesh.n_time && n_space == mesh.n_space;
  }
};

/// Samples on the exterior component only (measured data and mismatches),
/// level-major.
struct ExteriorField {
  int n_time = 0;
  int n_space = 0;
  std::vector<double> values;

  ExteriorField() = default;
  ExteriorField(int nt, int ns)
      : n_time(nt), n_space(ns),
        values(static_cast<std::size_t>(nt + 1) * static_cast<std::size_t>(ns), 0.0) {}

  double* level(int n) { return values.data() + static_cast<std::size_t>(n) * static_cast<std::size_t>(n_space); }
  const double* level(int n) const {
    return values.data() + static_cast<std::size_t>(n) * static_cast<std::size_t>(n_space);
  }
  double& at(int n, int i) { return level(n)[i]; }
  double at(int n, int i) const { return level(n)[i]; }

  double max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
};

}  // namespace heatshape
