#include "heatshape/objective.hpp"

#include <cmath>

#include "heatshape/errors.hpp"
#include "heatshape/time_rules.hpp"

namespace heatshape {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

ExteriorField exterior_part(const SpaceTimeMesh& mesh, const BoundaryField& field) {
  ExteriorField out(mesh.n_time, mesh.n_space);
  for (int n = 0; n <= mesh.n_time; ++n) {
    const double* src = field.level(n);
    double* dst = out.level(n);
    for (int i = 0; i < mesh.n_space; ++i) dst[i] = src[mesh.n_space + i];
  }
  return out;
}

double tracking_functional(const SpaceTimeMesh& mesh, const NeumannTrace& state,
                           const ExteriorField& measured) {
  if (measured.n_time != mesh.n_time || measured.n_space != mesh.n_space)
    throw config_error("tracking_functional: measured data shape mismatch");
  const int N = mesh.n_time;
  const int ns = mesh.n_space;
  const double dphi = kTwoPi / ns;
  double J = 0.0;
  for (int n = 0; n <= N; ++n) {
    const double wt = mesh.step * ((n == 0 || n == N) ? 0.5 : 1.0);
    const LevelNodes& lvl = mesh.levels[static_cast<std::size_t>(n)];
    const double* psi = state.values.level(n);
    const double* g = measured.level(n);
    double level_sum = 0.0;
    for (int i = 0; i < ns; ++i) {
      const double d = psi[ns + i] - g[i];
      level_sum += d * d * lvl.jac[static_cast<std::size_t>(ns + i)];
    }
    J += wt * level_sum * dphi;
  }
  return 0.5 * J;
}

ObjectiveReport evaluate_objective(const ShapeCoefficients& coeffs,
                                   const ExteriorField& dirichlet,
                                   const ExteriorField& measured,
                                   const ForwardConfig& config,
                                   const SolverOptions& options) {
  ObjectiveReport report;
  SpaceTimeMesh mesh;
  try {
    mesh = build_mesh(coeffs, config.exterior_radius, config.n_time, config.n_space);
  } catch (const geometry_fault&) {
    return report;  // infinite objective sentinel
  }

  BoundaryField data(mesh.n_time, mesh.n_space);
  if (dirichlet.n_time != mesh.n_time || dirichlet.n_space != mesh.n_space)
    throw config_error("evaluate_objective: Dirichlet data shape mismatch");
  for (int n = 0; n <= mesh.n_time; ++n) {
    const double* src = dirichlet.level(n);
    double* dst = data.level(n);
    for (int i = 0; i < mesh.n_space; ++i) dst[mesh.n_space + i] = src[i];
  }

  DirichletProblem problem{&mesh, std::move(data)};
  NeumannTrace trace = solve_dirichlet(problem, options);
  report.value = tracking_functional(mesh, trace, measured);
  report.neumann_state = std::move(trace);
  return report;
}

std::vector<double> shape_gradient(const ShapeCoefficients& coeffs,
                                   const SpaceTimeMesh& mesh,
                                   const NeumannTrace& state,
                                   const AdjointTrace& adjoint,
                                   double gradient_sign) {
  if (!state.values.shape_matches(mesh) || !adjoint.values.shape_matches(mesh))
    throw config_error("shape_gradient: trace shapes do not match mesh");

  const int N = mesh.n_time;
  const int ns = mesh.n_space;
  const int n_rows = coeffs.n_legendre() + 1;
  const int n_cols = coeffs.row_size();
  const double dphi = kTwoPi / ns;
  const bool singular = adjoint.values.exponent == SingularityExponent::inverse_sqrt;

  // Time weights: corrected rule against the (T - t)^{-1/2} factor when the
  // adjoint trace is stored as a cofactor, plain trapezoid otherwise.
  std::vector<double> wt(static_cast<std::size_t>(N) + 1, 0.0);
  if (singular) {
    const CorrectedTimeRule rule =
        corrected_rule(N, mesh.step, TimeRuleVariant::right_endpoint);
    for (int n = 0; n <= N; ++n) wt[static_cast<std::size_t>(n)] = rule.weight(N, n);
  } else {
    for (int n = 0; n <= N; ++n)
      wt[static_cast<std::size_t>(n)] = mesh.step * ((n == 0 || n == N) ? 0.5 : 1.0);
  }

  // Angular moments of the product field A = (dp/dn)(dv/dn) w at each level,
  // then time-collapsed against the Legendre stack.
  std::vector<double> grad(static_cast<std::size_t>(n_rows * n_cols), 0.0);
  std::vector<double> trig(static_cast<std::size_t>(n_cols * ns));
  for (int j = 0; j < n_cols; ++j)
    for (int i = 0; i < ns; ++i)
      trig[static_cast<std::size_t>(j * ns + i)] =
          trig_stack_value(coeffs.n_fourier(), j, kTwoPi * i / ns);

  std::vector<double> moments(static_cast<std::size_t>(n_cols));
  for (int n = 0; n <= N; ++n) {
    const double t = mesh.time_of(n);
    const LevelNodes& lvl = mesh.levels[static_cast<std::size_t>(n)];
    const double* psi_v = state.values.level(n);
    const double* p_row = adjoint.values.level(n);

    std::vector<double> a(static_cast<std::size_t>(ns));
    for (int i = 0; i < ns; ++i) {
      const double w = std::hypot(lvl.px[static_cast<std::size_t>(i)], lvl.py[static_cast<std::size_t>(i)]);
      a[static_cast<std::size_t>(i)] = psi_v[i] * p_row[i] * w;
    }
    for (int j = 0; j < n_cols; ++j) {
      double s = 0.0;
      const double* tj = trig.data() + static_cast<std::size_t>(j) * ns;
      for (int i = 0; i < ns; ++i) s += a[static_cast<std::size_t>(i)] * tj[i];
      moments[static_cast<std::size_t>(j)] = s * dphi;
    }
    const auto L = legendre_basis(t, coeffs.n_legendre(), coeffs.horizon());
    const double wn = wt[static_cast<std::size_t>(n)];
    for (int l = 0; l < n_rows; ++l) {
      const double c = wn * L[static_cast<std::size_t>(l)];
      double* row = grad.data() + static_cast<std::size_t>(l) * n_cols;
      for (int j = 0; j < n_cols; ++j) row[j] += c * moments[static_cast<std::size_t>(j)];
    }
  }
  for (double& v : grad) v *= gradient_sign;
  return grad;
}

}  // namespace heatshape
