#pragma once

#include <stdexcept>
#include <string>

namespace heatshape {

/// Raised when the parametrized radius leaves (0, exterior_radius) at a
/// sampled node.  The optimizer maps this to an infinite objective value
/// so the line search can backtrack out of infeasible shapes.
struct geometry_fault : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or mismatched field shapes.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Source level after target level in a history evaluation.
struct ordering_error : std::logic_error {
  using std::logic_error::logic_error;
};

/// Malformed or inconsistent data files.
struct data_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace heatshape
