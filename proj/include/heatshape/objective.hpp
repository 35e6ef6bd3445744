#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "heatshape/dirichlet_solver.hpp"
#include "heatshape/mesh.hpp"
#include "heatshape/shape_coefficients.hpp"

namespace heatshape {

/// Discretization of the forward problem driven by the optimizer.
struct ForwardConfig {
  double exterior_radius = 1.0;
  int n_time = 30;
  int n_space = 40;
};

/// Tracking functional evaluation.  A geometry fault yields the infinite
/// sentinel (value = +inf, no trace), so line searches can backtrack.
struct ObjectiveReport {
  double value = std::numeric_limits<double>::infinity();
  std::optional<NeumannTrace> neumann_state;
  std::vector<double> gradient;

  bool feasible() const { return neumann_state.has_value(); }
};

/// Builds the mesh, solves the state Dirichlet problem and evaluates
///   J = 1/2 int_0^T int_{Gamma^f} (dv/dn - g)^2 dsigma dt
/// with the periodic trapezoidal rule in space and the plain trapezoidal
/// rule in time (the state trace is smooth on the fixed boundary).
ObjectiveReport evaluate_objective(const ShapeCoefficients& coeffs,
                                   const ExteriorField& dirichlet,
                                   const ExteriorField& measured,
                                   const ForwardConfig& config,
                                   const SolverOptions& options = {});

/// Discrete shape gradient with respect to the stacked coefficients:
///   grad[(l,k)] = sigma * int_0^T int_0^{2pi} (dp/dn)(dv/dn)
///                  L_l(t) trig_k(phi) w(t,phi) dphi dt,
/// periodic trapezoidal rule in space; the time rule honors the
/// (T - t)^{-1/2} endpoint of the adjoint trace when present.
std::vector<double> shape_gradient(const ShapeCoefficients& coeffs,
                                   const SpaceTimeMesh& mesh,
                                   const NeumannTrace& state,
                                   const AdjointTrace& adjoint,
                                   double gradient_sign = conventions::kGradientSign);

/// J plus trace for an already built mesh (internal building block).
double tracking_functional(const SpaceTimeMesh& mesh, const NeumannTrace& state,
                           const ExteriorField& measured);

/// Exterior part of a full-boundary trace as an ExteriorField.
ExteriorField exterior_part(const SpaceTimeMesh& mesh, const BoundaryField& field);

}  // namespace heatshape
