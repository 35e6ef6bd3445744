#pragma once

#include <cstdint>
#include <string>

#include "heatshape/boundary_field.hpp"
#include "heatshape/inversion.hpp"
#include "heatshape/mesh.hpp"
#include "heatshape/shape_coefficients.hpp"

namespace heatshape {

/// Metadata sidecar of a measured-data file.
struct DataMeta {
  int n_time = 0;
  int n_space = 0;
  double horizon = 0.0;
  double exterior_radius = 0.0;
  std::uint64_t seed = 0;
  double noise_level = 0.0;
  int synth_n_time = 0;
  int synth_n_space = 0;
  std::string route = "indirect";
};

/// CSV with header `t,phi,value`, level-major rows; writes `path` and the
/// sidecar `path.meta`.
void write_exterior_data(const std::string& path, const ExteriorField& field,
                         const DataMeta& meta);
ExteriorField read_exterior_data(const std::string& path, DataMeta* meta = nullptr);

/// Resamples exterior data onto a different grid: trigonometric in angle,
/// linear in time.
ExteriorField resample_exterior(const ExteriorField& field, int n_time, int n_space);

/// Coefficient file: first line `n_legendre n_fourier T`, then one row of
/// 2*n_fourier values per Legendre degree.
void write_coefficients(const std::string& path, const ShapeCoefficients& coeffs);
ShapeCoefficients read_coefficients(const std::string& path);

/// History CSV with header `iteration,J,grad_inf,step,l2_err`.
void write_history_csv(const std::string& path, const InversionHistory& history);

/// Legacy-VTK polydata export of the space-time tube: one closed polyline
/// ring per time level, stacked along the third coordinate (time).
void write_tube_vtk(const std::string& path, const SpaceTimeMesh& mesh);

/// CSV alternative with columns t,phi,x,y.
void write_tube_csv(const std::string& path, const SpaceTimeMesh& mesh);

}  // namespace heatshape
