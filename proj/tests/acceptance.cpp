// Acceptance suite: one criterion per invocation (1..7), or "all".
// Each criterion prints a single PASS/FAIL line with the measured numbers;
// the process exit code reflects the verdict.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "heatshape/commands.hpp"
#include "heatshape/config.hpp"
#include "heatshape/dirichlet_solver.hpp"
#include "heatshape/inversion.hpp"
#include "heatshape/io.hpp"
#include "heatshape/manufactured.hpp"
#include "heatshape/objective.hpp"
#include "heatshape/time_rules.hpp"
#include "heatshape/validation.hpp"

using namespace heatshape;

namespace {

constexpr double kPi = 3.141592653589793238462643383279;

ExteriorField linear_data(int nt, int nx, double T) {
  ExteriorField f(nt, nx);
  for (int n = 0; n <= nt; ++n)
    for (int i = 0; i < nx; ++i) f.at(n, i) = T * n / nt;
  return f;
}

bool criterion_1() {
  // Corrected right-endpoint rule on f = cos(tau) at t = 1, fitted order
  // over h in {1/20, 1/40, 1/80, 1/160}.
  const double reference = adaptive_integrate(
      [](double u) { return 2.0 * std::cos(1.0 - u * u); }, 0.0, 1.0, 1e-14);
  std::vector<double> steps, errors;
  for (int n : {20, 40, 80, 160}) {
    const double h = 1.0 / n;
    const CorrectedTimeRule rule = corrected_rule(n, h, TimeRuleVariant::right_endpoint);
    double sum = 0.0;
    for (int j = 0; j <= n; ++j) sum += rule.weight(n, j) * std::cos(h * j);
    steps.push_back(h);
    errors.push_back(std::abs(sum - reference));
  }
  const double order = fitted_order(steps, errors);
  const bool pass = order >= 1.4;
  std::printf("%s criterion 1 (quadrature order): fitted order %.3f >= 1.4; errors",
              pass ? "PASS" : "FAIL", order);
  for (double e : errors) std::printf(" %.3e", e);
  std::printf("\n");
  return pass;
}

bool criterion_2() {
  // Manufactured single-layer solution, static and moving circular void,
  // coupled refinement (20,20) (40,40) (80,80), fitted order >= 1.4.
  const std::vector<StudyLevel> levels = {{20, 20}, {40, 40}, {80, 80}};
  bool pass = true;
  std::ostringstream detail;
  for (double rate : {0.0, 0.15}) {
    const ConvergenceStudy study = convergence_study(0.5, rate, 1.0, 1.0, levels);
    pass = pass && study.fitted_order >= 1.4;
    detail << (rate == 0.0 ? " static" : " moving") << ": order "
           << study.fitted_order << " (errors";
    for (double e : study.errors) detail << ' ' << e;
    detail << ")";
  }
  std::printf("%s criterion 2 (forward-solver order):%s\n", pass ? "PASS" : "FAIL",
              detail.str().c_str());
  return pass;
}

bool criterion_3() {
  // Adjoint shape gradient versus central finite differences on the stated
  // coarse configuration, >= 5 random directions, eps = 1e-4.
  const double T = 1.0;
  const ForwardConfig fwd{1.0, 24, 32};
  const int nk = 4, nl = 2;
  const ShapeCoefficients start = ShapeCoefficients::circle(nl, nk, T, 0.35);
  const ExteriorField f = linear_data(fwd.n_time, fwd.n_space, T);

  // Test instance: measured data built from the trace at the base point
  // minus a smooth space-time mismatch vanishing at t = 0 and t = T.
  const ObjectiveReport base = evaluate_objective(start, f, ExteriorField(24, 32), fwd);
  const SpaceTimeMesh mesh = build_mesh(start, 1.0, 24, 32);
  const ExteriorField trace = exterior_part(mesh, base.neumann_state->values);
  ExteriorField g(24, 32);
  for (int n = 0; n <= 24; ++n) {
    const double bump = std::sin(kPi * n / 24.0);
    for (int i = 0; i < 32; ++i) {
      const double phi = 2.0 * kPi * i / 32.0;
      g.at(n, i) = trace.at(n, i) -
                   bump * bump * (0.5 + 0.2 * std::cos(phi) + 0.1 * std::sin(2.0 * phi));
    }
  }

  std::mt19937_64 rng(2024);
  std::vector<std::vector<double>> dirs;
  for (int d = 0; d < 6; ++d) {
    std::vector<double> e(static_cast<std::size_t>(start.n_params()));
    double norm = 0.0;
    for (double& v : e) {
      v = (static_cast<double>(rng() >> 11) * 0x1.0p-53) * 2.0 - 1.0;
      norm += v * v;
    }
    for (double& v : e) v /= std::sqrt(norm);
    dirs.push_back(std::move(e));
  }
  const GradientCheckReport rep = fd_gradient_check(start, f, g, fwd, dirs, 1e-4);
  const bool pass = rep.worst_relative_error < 1e-3 &&
                    rep.empirical_sign == conventions::kGradientSign;
  std::printf("%s criterion 3 (gradient fidelity): worst relative error %.3e "
              "(tolerance 1e-3), sign %+.0f; per-direction",
              pass ? "PASS" : "FAIL", rep.worst_relative_error, rep.empirical_sign);
  for (const auto& r : rep.rows) std::printf(" %.2e", r.relative_error);
  std::printf("\n");
  return pass;
}

bool criterion_4() {
  // Local shape derivative versus the adjoint gradient component: coarse
  // discrepancy < 5e-2 and decreasing under refinement.
  const double T = 1.0;
  const int nk = 4, nl = 2;
  auto run = [&](int nt, int nx) {
    const ForwardConfig fwd{1.0, nt, nx};
    ShapeCoefficients truth = ShapeCoefficients::circle(nl, nk, T, 0.45);
    truth.alpha(1, 1) = 0.03;
    const SpaceTimeMesh mesh_truth = build_mesh(truth, 1.0, nt, nx);
    const ExteriorField f = linear_data(nt, nx, T);
    const ExteriorField g = synth_forward(mesh_truth, f);
    const ShapeCoefficients start = ShapeCoefficients::circle(nl, nk, T, 0.35);
    return local_shape_derivative_check(start, f, g, fwd, 1, 0, true);
  };
  const ShapeDerivativeCheck coarse = run(16, 24);
  const ShapeDerivativeCheck fine = run(32, 40);
  const bool pass = coarse.relative_discrepancy < 5e-2 &&
                    fine.relative_discrepancy < coarse.relative_discrepancy;
  std::printf("%s criterion 4 (shape-calculus consistency): coarse %.3e < 5e-2, "
              "refined %.3e decreasing\n",
              pass ? "PASS" : "FAIL", coarse.relative_discrepancy,
              fine.relative_discrepancy);
  return pass;
}

bool criterion_5() {
  // Scaled end-to-end recovery: truth radius 0.5, start 0.3, noiseless data
  // on a different grid, final l2 error < 1e-2 within 30 iterations and
  // accepted J nonincreasing.
  const double T = 1.0;
  const int nt = 30, nx = 40, nk = 4, nl = 3;
  const ForwardConfig fwd{1.0, nt, nx};
  const ShapeCoefficients truth = ShapeCoefficients::circle(nl, nk, T, 0.5);

  const int nts = nt + 7, nxs = nx + 16;
  const SpaceTimeMesh mesh_s = build_mesh(truth, 1.0, nts, nxs);
  const ExteriorField g_s = synth_forward(mesh_s, linear_data(nts, nxs, T));
  const ExteriorField g = resample_exterior(g_s, nt, nx);

  InversionSettings settings;
  settings.max_iterations = 30;
  settings.lbfgs_memory = 10;
  const ShapeCoefficients start = ShapeCoefficients::circle(nl, nk, T, 0.3);
  const InversionResult result =
      run_inversion(start, linear_data(nt, nx, T), g, fwd, settings, truth);

  bool monotone = true;
  for (std::size_t i = 1; i < result.history.records.size(); ++i)
    if (result.history.records[i].value > result.history.records[i - 1].value)
      monotone = false;
  const double final_err = coefficient_error(result.coefficients, truth);
  const bool pass = final_err < 1e-2 && monotone &&
                    result.history.records.size() <= 30;
  std::printf("%s criterion 5 (end-to-end recovery): final l2 error %.3e < 1e-2 "
              "in %zu iterations, accepted J %s\n",
              pass ? "PASS" : "FAIL", final_err, result.history.records.size(),
              monotone ? "nonincreasing" : "NOT monotone");
  return pass;
}

bool criterion_6() {
  // Full-scale smoke reproduction: N_t=90, N_x=80, N_K=8, N_L=9 (160
  // parameters), 1% noise, 100 iterations, 10 stored updates.
  const double T = 1.0;
  const int nt = 90, nx = 80, nk = 8, nl = 9;
  const ForwardConfig fwd{1.0, nt, nx};

  // Moving star-shaped truth expressed in the coefficient basis.
  ShapeCoefficients truth = ShapeCoefficients::circle(nl, nk, T, 0.5);
  truth.alpha(2, 0) = 0.06;
  truth.alpha(1, 1) = 0.05;
  truth.beta(1, 1) = -0.04;
  truth.alpha(0, 1) = 0.04;

  const int nts = nt + 7, nxs = nx + 16;
  const SpaceTimeMesh mesh_s = build_mesh(truth, 1.0, nts, nxs);
  const ExteriorField g_clean = synth_forward(mesh_s, linear_data(nts, nxs, T));
  const ExteriorField g_noisy = add_noise(g_clean, 0.01, 42);
  const ExteriorField g = resample_exterior(g_noisy, nt, nx);

  InversionSettings settings;
  settings.max_iterations = 100;
  settings.lbfgs_memory = 10;
  const ShapeCoefficients start = ShapeCoefficients::circle(nl, nk, T, 0.3);
  const InversionResult result =
      run_inversion(start, linear_data(nt, nx, T), g, fwd, settings, truth);

  const auto& records = result.history.records;
  if (records.empty()) {
    std::printf("FAIL criterion 6 (full-scale smoke): no iterations recorded\n");
    return false;
  }
  const double j_first = records.front().value;
  const double j_last = records.back().value;
  const double err_first = records.front().l2_error;
  const double err_last = coefficient_error(result.coefficients, truth);
  const bool params_ok = start.n_params() == 160;
  const bool decrease_ok = j_last <= 1e-2 * j_first;
  const bool err_ok = err_last < err_first;
  const bool pass = params_ok && decrease_ok && err_ok;
  std::printf("%s criterion 6 (full-scale smoke): J %.4e -> %.4e (factor %.1f), "
              "l2 error %.4f -> %.4f, %zu iterations, 160 parameters %s\n",
              pass ? "PASS" : "FAIL", j_first, j_last,
              j_first / std::max(j_last, 1e-300), err_first, err_last,
              records.size(), params_ok ? "yes" : "no");
  return pass;
}

bool criterion_7() {
  // Byte-identical history CSVs for two synth+invert runs with a fixed seed.
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "heatshape_acceptance_determinism";
  fs::remove_all(base);
  fs::create_directories(base);

  RunConfig config;
  config.n_time = 12;
  config.n_space = 16;
  config.n_fourier = 2;
  config.n_legendre = 1;
  config.max_iterations = 3;
  config.lbfgs_memory = 4;
  config.noise_level = 0.01;
  config.seed = 20240807;
  config.initial_radius = 0.4;
  config.synth_n_time = 15;
  config.synth_n_space = 20;

  const std::string truth_path = (base / "truth.txt").string();
  write_coefficients(truth_path, ShapeCoefficients::circle(config.n_legendre,
                                                           config.n_fourier,
                                                           config.horizon, 0.5));
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };

  std::string history[2];
  for (int run = 0; run < 2; ++run) {
    const fs::path dir = base / ("run" + std::to_string(run));
    if (cmd_synth(config, truth_path, dir.string()) != kExitOk) {
      std::printf("FAIL criterion 7 (determinism): synth failed\n");
      return false;
    }
    if (cmd_invert(config, (dir / "g_measured.csv").string(), truth_path,
                   (dir / "out").string()) != kExitOk) {
      std::printf("FAIL criterion 7 (determinism): invert failed\n");
      return false;
    }
    history[run] = slurp(dir / "out" / "history.csv");
  }
  const bool pass = !history[0].empty() && history[0] == history[1];
  std::printf("%s criterion 7 (determinism): history CSVs %s (%zu bytes)\n",
              pass ? "PASS" : "FAIL",
              pass ? "byte-identical across runs" : "differ", history[0].size());
  fs::remove_all(base);
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string which = argc > 1 ? argv[1] : "all";
  bool ok = true;
  if (which == "1" || which == "all") ok = criterion_1() && ok;
  if (which == "2" || which == "all") ok = criterion_2() && ok;
  if (which == "3" || which == "all") ok = criterion_3() && ok;
  if (which == "4" || which == "all") ok = criterion_4() && ok;
  if (which == "5" || which == "all") ok = criterion_5() && ok;
  if (which == "6" || which == "all") ok = criterion_6() && ok;
  if (which == "7" || which == "all") ok = criterion_7() && ok;
  return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
