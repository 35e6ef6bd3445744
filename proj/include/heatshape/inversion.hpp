#pragma once

#include <optional>
#include <string>
#include <vector>

#include "heatshape/objective.hpp"
#include "heatshape/shape_coefficients.hpp"

namespace heatshape {

struct InversionSettings {
  int max_iterations = 100;
  int lbfgs_memory = 10;
  double gradient_tolerance = 1e-8;
  double armijo_c1 = 1e-4;
  double trial_step = 1.0;
  int max_line_search = 20;
  double gradient_sign = conventions::kGradientSign;
};

enum class InversionStatus {
  max_iterations,
  gradient_converged,
  line_search_failure,
};

/// Per-iteration record: functional value, gradient sup norm, accepted step
/// and the l2 coefficient error against the ground truth when known.
struct InversionRecord {
  int iteration = 0;
  double value = 0.0;
  double gradient_inf = 0.0;
  double step = 0.0;
  double l2_error = std::numeric_limits<double>::quiet_NaN();
};

struct InversionHistory {
  std::vector<InversionRecord> records;
  InversionStatus status = InversionStatus::max_iterations;
};

struct InversionResult {
  ShapeCoefficients coefficients;
  InversionHistory history;
};

/// Quasi-Newton loop: objective -> adjoint -> shape gradient -> limited
/// memory inverse BFGS direction -> second-order line search.  Accepted
/// iterates never increase the functional.
InversionResult run_inversion(const ShapeCoefficients& initial,
                              const ExteriorField& dirichlet,
                              const ExteriorField& measured,
                              const ForwardConfig& forward,
                              const InversionSettings& settings,
                              const std::optional<ShapeCoefficients>& truth = std::nullopt);

}  // namespace heatshape
