#pragma once

#include <vector>

#include "heatshape/boundary_field.hpp"
#include "heatshape/conventions.hpp"
#include "heatshape/mesh.hpp"

namespace heatshape {

/// Gaussian factor of the thermal layer potentials,
/// (4 pi dt)^{-(d-1)/2} exp(-r2 / (4 dt)); the product with the global
/// 1/sqrt(4 pi (t - tau)) prefactor reproduces the d-dimensional heat kernel.
double heat_kernel(int dim, double dt, double r2);

/// Smooth spatial part of the single layer: trapezoidal sum over all source
/// nodes of level j, evaluated at all nodes of level n.  At j == n returns
/// the density (coincidence limit).  density/out sized to 2*n_space.
void poisson_single(const SpaceTimeMesh& mesh, int source_level,
                    int target_level, const std::vector<double>& density,
                    std::vector<double>& out);

/// Smooth spatial part of the double layer with the moving-boundary trace
/// applied at the source point.  At j == n returns
/// curvature_factor * curvature * density.
void poisson_double(const SpaceTimeMesh& mesh, int source_level,
                    int target_level, const std::vector<double>& density,
                    std::vector<double>& out, bool include_velocity = true,
                    double curvature_factor = conventions::kCurvatureFactor);

/// Transpose configuration: trace applied at the target point.  At j == n
/// returns curvature_factor * curvature(target) * density.
void poisson_adjoint_double(const SpaceTimeMesh& mesh, int source_level,
                            int target_level, const std::vector<double>& density,
                            std::vector<double>& out,
                            bool include_velocity = true,
                            double curvature_factor = conventions::kCurvatureFactor);

/// Off-boundary evaluation helpers (tests and oracles).
double poisson_single_at_point(const SpaceTimeMesh& mesh, int source_level,
                               double dt, double x, double y,
                               const std::vector<double>& density);
double poisson_double_at_point(const SpaceTimeMesh& mesh, int source_level,
                               double dt, double x, double y,
                               const std::vector<double>& density,
                               bool include_velocity = true);

/// Fused history accumulation for the marching solver: for every target
/// node i of level n adds
///   v_acc[i] += c_v * (V density_v)(t_n, t_j, x_i)
///   k_acc[i] += c_k * (K density_k)(t_n, t_j, x_i)
/// sharing one Gaussian evaluation per source/target pair.  Source level
/// strictly before target level.  Deterministic per-target accumulation.
struct HistoryTerm {
  int source_level;
  double coeff_single;
  const double* density_single;  ///< nullptr to skip
  double coeff_double;
  const double* density_double;  ///< nullptr to skip
};

void accumulate_history(const SpaceTimeMesh& mesh, int target_level,
                        const std::vector<HistoryTerm>& terms,
                        std::vector<double>& single_acc,
                        std::vector<double>& double_acc,
                        bool include_velocity = true);

/// Adjoint-double-layer history onto exterior targets only; used when
/// recovering exterior Neumann data from a single-layer density.
void accumulate_adjoint_history(const SpaceTimeMesh& mesh, int target_level,
                                const std::vector<HistoryTerm>& terms,
                                std::vector<double>& out_exterior,
                                bool include_velocity = true);

}  // namespace heatshape
