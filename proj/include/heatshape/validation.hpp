#pragma once

#include <string>
#include <vector>

#include "heatshape/inversion.hpp"
#include "heatshape/manufactured.hpp"
#include "heatshape/objective.hpp"

namespace heatshape {

/// One refinement level of a manufactured-solution study.
struct StudyLevel {
  int n_time = 0;
  int n_space = 0;
};

struct ConvergenceStudy {
  std::vector<double> steps;   ///< time steps h of each level
  std::vector<double> errors;  ///< max-node Neumann trace error
  double fitted_order = 0.0;   ///< least-squares slope of log err vs log h
  bool monotone = true;
};

/// Runs solve_dirichlet against the manufactured trace of the given shape
/// (time-dependent circle of radius r0 + r1 * t) over the refinement levels.
/// A null density selects the built-in smooth study density.
ConvergenceStudy convergence_study(double radius0, double radius_rate,
                                   double exterior_radius, double horizon,
                                   const std::vector<StudyLevel>& levels,
                                   double curvature_factor = conventions::kCurvatureFactor,
                                   ManufacturedSolution::Density density = nullptr);

/// Analytic-vs-finite-difference comparison of one gradient component
/// family; also determines the global gradient sign.
struct GradientCheckRow {
  double analytic = 0.0;
  double finite_difference = 0.0;
  double relative_error = 0.0;
};

struct GradientCheckReport {
  std::vector<GradientCheckRow> rows;
  double worst_relative_error = 0.0;
  double empirical_sign = 0.0;  ///< +1 / -1 from the best-matching orientation
};

/// Central differences of evaluate_objective against <grad J, e> for the
/// supplied directions on a coarse configuration.
GradientCheckReport fd_gradient_check(const ShapeCoefficients& at,
                                      const ExteriorField& dirichlet,
                                      const ExteriorField& measured,
                                      const ForwardConfig& forward,
                                      const std::vector<std::vector<double>>& directions,
                                      double fd_step = 1e-4);

/// Solves the local-shape-derivative Dirichlet problem for direction
/// Z = L_l(t) trig(k phi) (cos phi, sin phi) and compares the exterior
/// mismatch pairing with the matching adjoint gradient component.
struct ShapeDerivativeCheck {
  double via_perturbation = 0.0;  ///< int (d dv/dn)(dv/dn - g) over the exterior
  double via_adjoint = 0.0;       ///< <grad J, e_{k,l}>
  double relative_discrepancy = 0.0;
};

ShapeDerivativeCheck local_shape_derivative_check(const ShapeCoefficients& at,
                                                  const ExteriorField& dirichlet,
                                                  const ExteriorField& measured,
                                                  const ForwardConfig& forward,
                                                  int fourier_index, int legendre_index,
                                                  bool cosine = true);

/// Empirically pinned conventions; see conventions.hpp for the built-ins.
struct Conventions {
  double curvature_factor = 0.0;
  double jump_sign = 0.0;
  double gradient_sign = 0.0;
};

/// Reruns the three pinning experiments from scratch.
Conventions pin_conventions();

void write_conventions_file(const Conventions& c, const std::string& path);
Conventions read_conventions_file(const std::string& path);

/// Least-squares slope of log(err) against log(h).
double fitted_order(const std::vector<double>& steps,
                    const std::vector<double>& errors);

}  // namespace heatshape
