#pragma once

#include <cstdint>
#include <vector>

#include "heatshape/boundary_field.hpp"
#include "heatshape/conventions.hpp"
#include "heatshape/mesh.hpp"

namespace heatshape {

/// Dirichlet problem for the heat equation on the space-time tube.
/// Data must vanish at level 0 (compatibility with the zero initial state).
struct DirichletProblem {
  const SpaceTimeMesh* mesh = nullptr;
  BoundaryField dirichlet_data;
};

/// Neumann density gamma_1^- v = dv/dn + (1/2) <V,n> v at the mesh nodes.
/// Where the data vanishes or the boundary is fixed this is dv/dn itself.
struct NeumannTrace {
  BoundaryField values;
};

struct SolverOptions {
  bool include_velocity = true;  ///< test hook: hard-disable the <V,n> terms
  double curvature_factor = conventions::kCurvatureFactor;
  double jump_sign = conventions::kJumpSign;
};

/// Time-marching Nystrom solution of the Green's integral equation
///   (1/2) phi = V gamma_1^- phi - K phi.
/// The coincidence blocks are diagonal, so every step is an explicit
/// update of the unknown Neumann density.
NeumannTrace solve_dirichlet(const DirichletProblem& problem,
                             const SolverOptions& options = {});

enum class AdjointEndpointMode {
  automatic,  ///< singular unless the mismatch vanishes at t = T
  singular,   ///< density represented as chi(tau)/sqrt(tau) after reversal
  regular,    ///< plain right-endpoint marching on the reversed problem
};

/// Adjoint Neumann trace.  With exponent inverse_sqrt the stored values are
/// the smooth cofactor chi in original time order:
///   dp/dn(t_n, x) = values(t_n, x) / sqrt(T - t_n)   (singular at t = T).
/// With exponent none the values are the plain trace.
struct AdjointTrace {
  BoundaryField values;
};

/// Solves the time-reversed heat equation driven by the exterior data
/// mismatch (dv/dn - g); returns the interior-relevant Neumann trace on the
/// full boundary in original time order.
AdjointTrace solve_adjoint(const SpaceTimeMesh& mesh,
                           const ExteriorField& mismatch,
                           const SolverOptions& options = {},
                           AdjointEndpointMode mode = AdjointEndpointMode::automatic);

/// Indirect synthesis of exterior Neumann data: solves the first-kind
/// single-layer equation V q = v_data (f on the exterior, 0 on the moving
/// boundary) and evaluates g = jump_sign * q/2 + K' q on the exterior.
ExteriorField synth_forward(const SpaceTimeMesh& mesh_truth,
                            const ExteriorField& dirichlet_exterior,
                            const SolverOptions& options = {});

/// Additive Gaussian noise scaled by the sup norm of the field; the
/// generator is seeded and platform-independent (Box-Muller over a
/// mersenne twister), so outputs are deterministic for a fixed seed.
ExteriorField add_noise(const ExteriorField& field, double level,
                        std::uint64_t seed);

}  // namespace heatshape
