#include "heatshape/dirichlet_solver.hpp"

#include <cassert>
#include <cmath>
#include <random>

#include "heatshape/errors.hpp"
#include "heatshape/poisson_ops.hpp"
#include "heatshape/time_rules.hpp"

namespace heatshape {

namespace {

constexpr double kPi = 3.141592653589793238462643383279;
const double kSqrt4Pi = std::sqrt(4.0 * kPi);
const double kSqrtPi = std::sqrt(kPi);

void check_compatible_level0(const BoundaryField& data) {
  double scale = 0.0;
  for (double v : data.values) scale = std::max(scale, std::abs(v));
  const double* lvl0 = data.level(0);
  for (int i = 0; i < data.n_nodes(); ++i)
    if (std::abs(lvl0[i]) > 1e-12 * std::max(1.0, scale))
      throw config_error("solve_dirichlet: Dirichlet data must vanish at t = 0");
}

}  // namespace

NeumannTrace solve_dirichlet(const DirichletProblem& problem,
                             const SolverOptions& options) {
  const SpaceTimeMesh& mesh = *problem.mesh;
  const BoundaryField& data = problem.dirichlet_data;
  if (!data.shape_matches(mesh))
    throw config_error("solve_dirichlet: data shape does not match mesh");
  check_compatible_level0(data);

  const int N = mesh.n_time;
  const int m = mesh.n_nodes();
  const CorrectedTimeRule rule =
      corrected_rule(N, mesh.step, TimeRuleVariant::right_endpoint);

  NeumannTrace trace;
  trace.values = BoundaryField(N, mesh.n_space);

  std::vector<double> v_acc, k_acc;
  std::vector<HistoryTerm> terms;
  terms.reserve(static_cast<std::size_t>(N));
  for (int n = 1; n <= N; ++n) {
    terms.clear();
    for (int j = 0; j < n; ++j) {
      const double c = rule.weight(n, j) / kSqrt4Pi;
      terms.push_back({j, c, trace.values.level(j), c, data.level(j)});
    }
    accumulate_history(mesh, n, terms, v_acc, k_acc, options.include_velocity);

    const double mu_n = rule.mu(n);
    assert(mu_n > 0.0);
    const LevelNodes& lvl = mesh.levels[static_cast<std::size_t>(n)];
    const double* phi_n = data.level(n);
    double* psi_n = trace.values.level(n);
    for (int i = 0; i < m; ++i) {
      const double h_coin = options.curvature_factor * lvl.curv[static_cast<std::size_t>(i)];
      psi_n[i] = (0.5 * phi_n[i] + k_acc[static_cast<std::size_t>(i)] +
                  mu_n * h_coin * phi_n[i] - v_acc[static_cast<std::size_t>(i)]) /
                 mu_n;
    }
  }
  return trace;
}

AdjointTrace solve_adjoint(const SpaceTimeMesh& mesh,
                           const ExteriorField& mismatch,
                           const SolverOptions& options,
                           AdjointEndpointMode mode) {
  if (mismatch.n_time != mesh.n_time || mismatch.n_space != mesh.n_space)
    throw config_error("solve_adjoint: mismatch shape does not match mesh");

  const int N = mesh.n_time;
  const int ns = mesh.n_space;
  const int m = mesh.n_nodes();
  const SpaceTimeMesh rev = mesh.reversed_in_time();

  // Reversed Dirichlet data: mismatch on the exterior, zero on the interior.
  BoundaryField data_rev(N, ns);
  for (int n = 0; n <= N; ++n) {
    const double* src = mismatch.level(N - n);
    double* dst = data_rev.level(n);
    for (int i = 0; i < ns; ++i) dst[ns + i] = src[i];
  }

  if (mode == AdjointEndpointMode::automatic) {
    double scale = mismatch.max_abs();
    double end = 0.0;
    const double* lvlN = mismatch.level(N);
    for (int i = 0; i < ns; ++i) end = std::max(end, std::abs(lvlN[i]));
    mode = (end <= 1e-13 * std::max(1.0, scale)) ? AdjointEndpointMode::regular
                                                 : AdjointEndpointMode::singular;
  }

  AdjointTrace out;
  out.values = BoundaryField(N, ns);

  if (mode == AdjointEndpointMode::regular) {
    DirichletProblem fwd{&rev, data_rev};
    NeumannTrace rev_trace = solve_dirichlet(fwd, options);
    for (int n = 0; n <= N; ++n) {
      const double* src = rev_trace.values.level(N - n);
      double* dst = out.values.level(n);
      for (int i = 0; i < m; ++i) dst[i] = src[i];
    }
    out.values.exponent = SingularityExponent::none;
    return out;
  }

  // Singular path: density chi(tau)/sqrt(tau) with chi smooth; the
  // incompatible corner fixes chi(0) = data(0)/sqrt(pi).
  const CorrectedTimeRule rule_v =
      corrected_rule(N, mesh.step, TimeRuleVariant::both_endpoints);
  const CorrectedTimeRule rule_k =
      corrected_rule(N, mesh.step, TimeRuleVariant::right_endpoint);

  BoundaryField chi(N, ns);
  {
    const double* d0 = data_rev.level(0);
    double* c0 = chi.level(0);
    for (int i = 0; i < m; ++i) c0[i] = d0[i] / kSqrtPi;
  }

  std::vector<double> v_acc, k_acc;
  std::vector<HistoryTerm> terms;
  for (int n = 1; n <= N; ++n) {
    terms.clear();
    for (int j = 0; j < n; ++j) {
      terms.push_back({j, rule_v.weight(n, j), chi.level(j),
                       rule_k.weight(n, j), data_rev.level(j)});
    }
    accumulate_history(rev, n, terms, v_acc, k_acc, options.include_velocity);

    const double mu_n = rule_k.mu(n);
    const double w_diag = rule_v.weight(n, n);
    const LevelNodes& lvl = rev.levels[static_cast<std::size_t>(n)];
    const double* phi_n = data_rev.level(n);
    double* chi_n = chi.level(n);
    for (int i = 0; i < m; ++i) {
      const double h_coin = options.curvature_factor * lvl.curv[static_cast<std::size_t>(i)];
      chi_n[i] = (kSqrt4Pi * (0.5 + mu_n * h_coin) * phi_n[i] +
                  k_acc[static_cast<std::size_t>(i)] - v_acc[static_cast<std::size_t>(i)]) /
                 w_diag;
    }
  }

  // Back to original time order; values are the smooth cofactor.
  for (int n = 0; n <= N; ++n) {
    const double* src = chi.level(N - n);
    double* dst = out.values.level(n);
    for (int i = 0; i < m; ++i) dst[i] = src[i];
  }
  out.values.exponent = SingularityExponent::inverse_sqrt;
  return out;
}

ExteriorField synth_forward(const SpaceTimeMesh& mesh_truth,
                            const ExteriorField& dirichlet_exterior,
                            const SolverOptions& options) {
  const SpaceTimeMesh& mesh = mesh_truth;
  if (dirichlet_exterior.n_time != mesh.n_time ||
      dirichlet_exterior.n_space != mesh.n_space)
    throw config_error("synth_forward: data shape does not match mesh");

  const int N = mesh.n_time;
  const int ns = mesh.n_space;
  const int m = mesh.n_nodes();
  const CorrectedTimeRule rule =
      corrected_rule(N, mesh.step, TimeRuleVariant::right_endpoint);

  BoundaryField v_data(N, ns);
  for (int n = 0; n <= N; ++n) {
    const double* src = dirichlet_exterior.level(n);
    double* dst = v_data.level(n);
    for (int i = 0; i < ns; ++i) dst[ns + i] = src[i];
  }
  check_compatible_level0(v_data);

  // First-kind marching: V q = v_data.
  BoundaryField q(N, ns);
  std::vector<double> v_acc, k_acc;
  std::vector<HistoryTerm> terms;
  for (int n = 1; n <= N; ++n) {
    terms.clear();
    for (int j = 0; j < n; ++j) {
      const double c = rule.weight(n, j) / kSqrt4Pi;
      terms.push_back({j, c, q.level(j), 0.0, nullptr});
    }
    accumulate_history(mesh, n, terms, v_acc, k_acc, options.include_velocity);
    const double mu_n = rule.mu(n);
    const double* f_n = v_data.level(n);
    double* q_n = q.level(n);
    for (int i = 0; i < m; ++i)
      q_n[i] = (f_n[i] - v_acc[static_cast<std::size_t>(i)]) / mu_n;
  }

  // Neumann trace of the single-layer ansatz on the exterior:
  // g = jump_sign * q/2 + K' q (history + curvature coincidence block).
  ExteriorField g(N, ns);
  std::vector<double> kp_acc;
  for (int n = 1; n <= N; ++n) {
    terms.clear();
    for (int j = 0; j < n; ++j) {
      const double c = rule.weight(n, j) / kSqrt4Pi;
      terms.push_back({j, c, q.level(j), 0.0, nullptr});
    }
    accumulate_adjoint_history(mesh, n, terms, kp_acc, options.include_velocity);
    const double mu_n = rule.mu(n);
    const LevelNodes& lvl = mesh.levels[static_cast<std::size_t>(n)];
    const double* q_n = q.level(n);
    double* g_n = g.level(n);
    for (int e = 0; e < ns; ++e) {
      const int i = ns + e;
      const double h_coin = options.curvature_factor * lvl.curv[static_cast<std::size_t>(i)];
      g_n[e] = options.jump_sign * 0.5 * q_n[i] + kp_acc[static_cast<std::size_t>(e)] +
               mu_n * h_coin * q_n[i];
    }
  }
  return g;
}

ExteriorField add_noise(const ExteriorField& field, double level,
                        std::uint64_t seed) {
  if (level < 0.0) throw config_error("add_noise: negative noise level");
  ExteriorField out = field;
  if (level == 0.0) return out;

  const double scale = level * field.max_abs();
  std::mt19937_64 rng(seed);
  // Box-Muller on 53-bit uniforms; avoids the library-dependent
  // std::normal_distribution so outputs are platform-stable.
  const double two_pi = 2.0 * kPi;
  auto next_uniform = [&rng]() {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  };
  bool have_spare = false;
  double spare = 0.0;
  for (double& v : out.values) {
    double gauss;
    if (have_spare) {
      gauss = spare;
      have_spare = false;
    } else {
      const double u1 = next_uniform();
      const double u2 = next_uniform();
      const double r = std::sqrt(-2.0 * std::log(u1));
      gauss = r * std::cos(two_pi * u2);
      spare = r * std::sin(two_pi * u2);
      have_spare = true;
    }
    v += scale * gauss;
  }
  return out;
}

}  // namespace heatshape
