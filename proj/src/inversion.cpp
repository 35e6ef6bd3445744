#include "heatshape/inversion.hpp"

#include <cmath>

#include "heatshape/errors.hpp"
#include "heatshape/lbfgs.hpp"

namespace heatshape {

namespace {

struct FullEvaluation {
  double value = 0.0;
  std::vector<double> gradient;
  NeumannTrace state;
};

FullEvaluation evaluate_with_gradient(const ShapeCoefficients& coeffs,
                                      const ExteriorField& dirichlet,
                                      const ExteriorField& measured,
                                      const ForwardConfig& forward,
                                      double gradient_sign) {
  ObjectiveReport report = evaluate_objective(coeffs, dirichlet, measured, forward);
  if (!report.feasible())
    throw geometry_fault("run_inversion: infeasible geometry at the current iterate");

  SpaceTimeMesh mesh =
      build_mesh(coeffs, forward.exterior_radius, forward.n_time, forward.n_space);
  ExteriorField mismatch(mesh.n_time, mesh.n_space);
  const ExteriorField trace_ext = exterior_part(mesh, report.neumann_state->values);
  for (std::size_t i = 0; i < mismatch.values.size(); ++i)
    mismatch.values[i] = trace_ext.values[i] - measured.values[i];

  AdjointTrace adjoint = solve_adjoint(mesh, mismatch);

  FullEvaluation out;
  out.value = report.value;
  out.gradient = shape_gradient(coeffs, mesh, *report.neumann_state, adjoint,
                                gradient_sign);
  out.state = std::move(*report.neumann_state);
  return out;
}

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

InversionResult run_inversion(const ShapeCoefficients& initial,
                              const ExteriorField& dirichlet,
                              const ExteriorField& measured,
                              const ForwardConfig& forward,
                              const InversionSettings& settings,
                              const std::optional<ShapeCoefficients>& truth) {
  InversionResult result{initial, {}};
  ShapeCoefficients& coeffs = result.coefficients;
  const int n = coeffs.n_params();

  LbfgsMemory memory(settings.lbfgs_memory);
  LineSearchOptions ls_options;
  ls_options.armijo_c1 = settings.armijo_c1;
  ls_options.trial_step = settings.trial_step;
  ls_options.max_trials = settings.max_line_search;

  FullEvaluation current = evaluate_with_gradient(
      coeffs, dirichlet, measured, forward, settings.gradient_sign);

  for (int iter = 0; iter < settings.max_iterations; ++iter) {
    InversionRecord record;
    record.iteration = iter;
    record.value = current.value;
    record.gradient_inf = inf_norm(current.gradient);
    if (truth) record.l2_error = coefficient_error(coeffs, *truth);

    if (record.gradient_inf <= settings.gradient_tolerance) {
      result.history.records.push_back(record);
      result.history.status = InversionStatus::gradient_converged;
      return result;
    }

    std::vector<double> direction = lbfgs_direction(memory, current.gradient);
    double slope = 0.0;
    for (int i = 0; i < n; ++i)
      slope += direction[static_cast<std::size_t>(i)] * current.gradient[static_cast<std::size_t>(i)];
    if (!(slope < 0.0)) {
      // Stale curvature information; fall back to steepest descent.
      memory.clear();
      direction = current.gradient;
      for (double& v : direction) v = -v;
      slope = 0.0;
      for (int i = 0; i < n; ++i)
        slope += direction[static_cast<std::size_t>(i)] * current.gradient[static_cast<std::size_t>(i)];
    }

    auto phi = [&](double alpha) {
      std::vector<double> trial = coeffs.flat();
      for (int i = 0; i < n; ++i)
        trial[static_cast<std::size_t>(i)] += alpha * direction[static_cast<std::size_t>(i)];
      const ShapeCoefficients c = ShapeCoefficients::from_flat(
          coeffs.n_legendre(), coeffs.n_fourier(), coeffs.horizon(), trial);
      return evaluate_objective(c, dirichlet, measured, forward).value;
    };

    const LineSearchResult ls = line_search(phi, current.value, slope, ls_options);
    if (!ls.success) {
      record.step = 0.0;
      result.history.records.push_back(record);
      result.history.status = InversionStatus::line_search_failure;
      return result;
    }
    record.step = ls.alpha;
    result.history.records.push_back(record);

    std::vector<double> step(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      step[static_cast<std::size_t>(i)] = ls.alpha * direction[static_cast<std::size_t>(i)];
      coeffs.flat()[static_cast<std::size_t>(i)] += step[static_cast<std::size_t>(i)];
    }

    FullEvaluation next = evaluate_with_gradient(
        coeffs, dirichlet, measured, forward, settings.gradient_sign);
    std::vector<double> y(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      y[static_cast<std::size_t>(i)] =
          next.gradient[static_cast<std::size_t>(i)] - current.gradient[static_cast<std::size_t>(i)];
    memory.push(std::move(step), std::move(y));
    current = std::move(next);
  }

  result.history.status = InversionStatus::max_iterations;
  return result;
}

}  // namespace heatshape
