#pragma once

namespace heatshape::conventions {

/// Scale of the signed curvature in the coincidence limit of the double
/// layer operators: K phi -> factor * curvature * phi as tau -> t.
/// Pinned by the manufactured-solution refinement study (validate command).
inline constexpr double kCurvatureFactor = 0.5;

/// Jump sign when recovering the Neumann trace of a single-layer ansatz
/// from inside the domain: g = kJumpSign * q/2 + K' q.
/// Pinned against the manufactured-solution oracle.
inline constexpr double kJumpSign = +1.0;

/// Overall sign of the assembled shape gradient relative to the raw
/// boundary integral of (dp/dn)(dv/dn) L_l trig_k w.  Pinned by the
/// finite-difference gradient check.
inline constexpr double kGradientSign = +1.0;

}  // namespace heatshape::conventions
