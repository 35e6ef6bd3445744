#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "heatshape/dirichlet_solver.hpp"
#include "heatshape/errors.hpp"
#include "heatshape/inversion.hpp"
#include "heatshape/lbfgs.hpp"
#include "heatshape/objective.hpp"
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

}  // namespace

TEST_CASE("objective is zero for perfectly matching data") {
  const ForwardConfig fwd{1.0, 10, 16};
  ShapeCoefficients shape = ShapeCoefficients::circle(1, 2, 1.0, 0.4);
  const ExteriorField f = linear_data(10, 16, 1.0);
  ObjectiveReport first = evaluate_objective(shape, f, ExteriorField(10, 16), fwd);
  REQUIRE(first.feasible());
  const SpaceTimeMesh mesh = build_mesh(shape, 1.0, 10, 16);
  const ExteriorField g = exterior_part(mesh, first.neumann_state->values);
  ObjectiveReport matched = evaluate_objective(shape, f, g, fwd);
  CHECK(matched.value == 0.0);
}

TEST_CASE("objective of a unit mismatch equals pi") {
  // (dv/dn - g) = 1 on the unit exterior circle over T = 1:
  // J = 1/2 * 2*pi*R*T = pi, exact for the trapezoidal/periodic rules.
  ShapeCoefficients shape = ShapeCoefficients::circle(1, 2, 1.0, 0.4);
  const SpaceTimeMesh mesh = build_mesh(shape, 1.0, 12, 16);
  NeumannTrace trace;
  trace.values = BoundaryField(12, 16);
  ExteriorField g(12, 16);
  for (int n = 0; n <= 12; ++n)
    for (int i = 0; i < 16; ++i) {
      trace.values.at(n, 16 + i) = 0.75;
      g.at(n, i) = -0.25;
    }
  CHECK(tracking_functional(mesh, trace, g) == doctest::Approx(kPi).epsilon(1e-13));
}

TEST_CASE("objective is invariant under relabeling the angular start node") {
  const int nt = 8, nx = 12;
  ShapeCoefficients shape = ShapeCoefficients::circle(1, 2, 1.0, 0.4);
  const SpaceTimeMesh mesh = build_mesh(shape, 1.0, nt, nx);
  NeumannTrace trace;
  trace.values = BoundaryField(nt, nx);
  ExteriorField g(nt, nx);
  std::mt19937_64 rng(3);
  for (int n = 0; n <= nt; ++n)
    for (int i = 0; i < nx; ++i) {
      trace.values.at(n, nx + i) = (rng() % 1000) / 500.0;
      g.at(n, i) = (rng() % 1000) / 500.0;
    }
  const double J = tracking_functional(mesh, trace, g);
  for (int shift : {1, 5}) {
    NeumannTrace trace_s;
    trace_s.values = BoundaryField(nt, nx);
    ExteriorField g_s(nt, nx);
    for (int n = 0; n <= nt; ++n)
      for (int i = 0; i < nx; ++i) {
        trace_s.values.at(n, nx + (i + shift) % nx) = trace.values.at(n, nx + i);
        g_s.at(n, (i + shift) % nx) = g.at(n, i);
      }
    CHECK(tracking_functional(mesh, trace_s, g_s) == doctest::Approx(J).epsilon(1e-14));
  }
}

TEST_CASE("geometry faults produce the infinite sentinel") {
  const ForwardConfig fwd{1.0, 6, 16};
  ShapeCoefficients bad = ShapeCoefficients::circle(1, 2, 1.0, 1.4);  // escapes
  const ObjectiveReport report =
      evaluate_objective(bad, linear_data(6, 16, 1.0), ExteriorField(6, 16), fwd);
  CHECK(!report.feasible());
  CHECK(std::isinf(report.value));
}

TEST_CASE("shape gradient of a zero adjoint vanishes") {
  ShapeCoefficients shape = ShapeCoefficients::circle(1, 2, 1.0, 0.4);
  const SpaceTimeMesh mesh = build_mesh(shape, 1.0, 6, 16);
  NeumannTrace state;
  state.values = BoundaryField(6, 16);
  for (double& v : state.values.values) v = 1.0;
  AdjointTrace adjoint;
  adjoint.values = BoundaryField(6, 16);
  const std::vector<double> grad = shape_gradient(shape, mesh, state, adjoint);
  for (double v : grad) CHECK(v == 0.0);
}

TEST_CASE("radially symmetric traces kill all angular modes") {
  ShapeCoefficients shape = ShapeCoefficients::circle(2, 4, 1.0, 0.4);
  const SpaceTimeMesh mesh = build_mesh(shape, 1.0, 8, 24);
  NeumannTrace state;
  state.values = BoundaryField(8, 24);
  AdjointTrace adjoint;
  adjoint.values = BoundaryField(8, 24);
  for (int n = 0; n <= 8; ++n)
    for (int i = 0; i < mesh.n_nodes(); ++i) {
      state.values.at(n, i) = 1.0 + 0.5 * n;
      adjoint.values.at(n, i) = 2.0 - 0.1 * n;
    }
  const std::vector<double> grad = shape_gradient(shape, mesh, state, adjoint);
  const int K = shape.n_fourier();
  for (int l = 0; l <= shape.n_legendre(); ++l)
    for (int j = 0; j < shape.row_size(); ++j) {
      if (j == K - 1) continue;  // constant mode survives
      CHECK(std::abs(grad[l * shape.row_size() + j]) < 1e-12);
    }
  CHECK(std::abs(grad[K - 1]) > 1e-3);
}

TEST_CASE("gradient matches finite differences on a coarse configuration") {
  const double T = 1.0;
  const ForwardConfig fwd{1.0, 24, 32};
  const int nk = 3, nl = 1;
  ShapeCoefficients truth = ShapeCoefficients::circle(nl, nk, T, 0.45);
  truth.alpha(1, 0) = 0.03;
  const SpaceTimeMesh mesh_truth = build_mesh(truth, 1.0, 24, 32);
  const ExteriorField f = linear_data(24, 32, T);
  const ExteriorField g = synth_forward(mesh_truth, f);
  const ShapeCoefficients start = ShapeCoefficients::circle(nl, nk, T, 0.35);

  std::mt19937_64 rng(17);
  std::vector<std::vector<double>> dirs;
  for (int d = 0; d < 3; ++d) {
    std::vector<double> e(static_cast<std::size_t>(start.n_params()));
    double norm = 0.0;
    for (double& v : e) {
      v = (rng() % 2000) / 1000.0 - 1.0;
      norm += v * v;
    }
    for (double& v : e) v /= std::sqrt(norm);
    dirs.push_back(std::move(e));
  }
  const GradientCheckReport rep = fd_gradient_check(start, f, g, fwd, dirs, 1e-4);
  CHECK(rep.empirical_sign == conventions::kGradientSign);
  // Discretization-consistency bound at this resolution; the acceptance
  // suite tracks the tighter tolerance.
  CHECK(rep.worst_relative_error < 5e-2);
}

TEST_CASE("lbfgs direction basics") {
  SUBCASE("empty memory returns the negative gradient") {
    LbfgsMemory memory(5);
    const std::vector<double> g = {1.0, -2.0, 0.5};
    const std::vector<double> d = lbfgs_direction(memory, g);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(d[i] == -g[i]);
  }
  SUBCASE("zero gradient gives a zero direction") {
    LbfgsMemory memory(5);
    memory.push({1.0, 0.0}, {0.5, 0.1});
    const std::vector<double> d = lbfgs_direction(memory, {0.0, 0.0});
    for (double v : d) CHECK(v == 0.0);
  }
  SUBCASE("pairs violating the curvature condition are skipped") {
    LbfgsMemory memory(5);
    CHECK(!memory.push({1.0, 0.0}, {-1.0, 0.0}));
    CHECK(memory.size() == 0);
    CHECK(memory.push({1.0, 0.0}, {2.0, 0.0}));
    CHECK(memory.size() == 1);
  }
  SUBCASE("memory is bounded") {
    LbfgsMemory memory(2);
    for (int k = 0; k < 5; ++k) {
      std::vector<double> s = {1.0 + k, 0.0};
      std::vector<double> y = {1.0, 0.0};
      memory.push(std::move(s), std::move(y));
    }
    CHECK(memory.size() == 2);
  }
}

TEST_CASE("lbfgs directions are descent directions") {
  std::mt19937_64 rng(41);
  const int n = 12;
  auto randvec = [&](double scale) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& x : v) x = scale * ((rng() % 2000) / 1000.0 - 1.0);
    return v;
  };
  LbfgsMemory memory(6);
  for (int k = 0; k < 10; ++k) {
    std::vector<double> s = randvec(1.0);
    std::vector<double> y = s;  // y = s + small perturbation keeps <s,y> > 0
    for (double& v : y) v += 0.2 * ((rng() % 2000) / 1000.0 - 1.0);
    memory.push(std::move(s), std::move(y));
  }
  REQUIRE(memory.size() > 0);
  for (int rep = 0; rep < 20; ++rep) {
    const std::vector<double> g = randvec(2.0);
    double gnorm = 0.0;
    for (double v : g) gnorm += v * v;
    if (gnorm == 0.0) continue;
    const std::vector<double> d = lbfgs_direction(memory, g);
    double slope = 0.0;
    for (int i = 0; i < n; ++i) slope += d[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(i)];
    CHECK(slope < 0.0);
  }
}

TEST_CASE("a non-descent model stops with a line-search failure") {
  // Flipping the gradient sign makes every quasi-Newton direction an ascent
  // direction for the true objective, so no Armijo step exists.
  const ForwardConfig fwd{1.0, 10, 16};
  ShapeCoefficients truth = ShapeCoefficients::circle(1, 2, 1.0, 0.45);
  const SpaceTimeMesh mesh = build_mesh(truth, 1.0, 10, 16);
  const ExteriorField f = linear_data(10, 16, 1.0);
  const ExteriorField g = synth_forward(mesh, f);

  InversionSettings settings;
  settings.max_iterations = 5;
  settings.max_line_search = 8;
  settings.gradient_sign = -conventions::kGradientSign;
  const ShapeCoefficients start = ShapeCoefficients::circle(1, 2, 1.0, 0.4);
  const InversionResult result = run_inversion(start, f, g, fwd, settings);
  CHECK(result.history.status == InversionStatus::line_search_failure);
  CHECK(result.history.records.size() == 1);
}

TEST_CASE("lbfgs reaches the minimizer of a quadratic in n+1 iterations") {
  // Random SPD quadratic, exact line search; with full memory the iterates
  // terminate finitely like conjugate gradients.
  const int n = 6;
  std::mt19937_64 rng(23);
  std::vector<double> A(n * n, 0.0);
  for (int i = 0; i < n; ++i) {
    A[i * n + i] = 1.0 + (rng() % 100) / 20.0;
    for (int j = 0; j < i; ++j) {
      const double v = ((rng() % 200) / 1000.0 - 0.1);
      A[i * n + j] += v;
      A[j * n + i] += v;
    }
  }
  for (int i = 0; i < n; ++i) A[i * n + i] += 1.0;
  std::vector<double> b(n);
  for (double& v : b) v = (rng() % 1000) / 250.0 - 2.0;

  auto matvec = [&](const std::vector<double>& x) {
    std::vector<double> y(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) y[i] += A[i * n + j] * x[j];
    return y;
  };

  std::vector<double> x(n, 0.0);
  LbfgsMemory memory(10);
  std::vector<double> grad = matvec(x);
  for (int i = 0; i < n; ++i) grad[i] -= b[i];
  for (int it = 0; it <= n; ++it) {
    const std::vector<double> d = lbfgs_direction(memory, grad);
    const std::vector<double> Ad = matvec(d);
    double dg = 0.0, dAd = 0.0;
    for (int i = 0; i < n; ++i) {
      dg += d[i] * grad[i];
      dAd += d[i] * Ad[i];
    }
    const double alpha = -dg / dAd;
    std::vector<double> s(n), y(n);
    for (int i = 0; i < n; ++i) {
      s[i] = alpha * d[i];
      x[i] += s[i];
      y[i] = alpha * Ad[i];
      grad[i] += y[i];
    }
    memory.push(std::move(s), std::move(y));
    double gnorm = 0.0;
    for (double v : grad) gnorm = std::max(gnorm, std::abs(v));
    if (gnorm < 1e-12) break;
  }
  // x should solve A x = b
  const std::vector<double> Ax = matvec(x);
  for (int i = 0; i < n; ++i) CHECK(Ax[i] == doctest::Approx(b[i]).epsilon(1e-8));
}

TEST_CASE("line search behavior") {
  SUBCASE("exact quadratic accepts alpha = 1") {
    auto phi = [](double a) { return (a - 1.0) * (a - 1.0); };
    const LineSearchResult r = line_search(phi, phi(0.0), -2.0);
    CHECK(r.success);
    CHECK(r.alpha == doctest::Approx(1.0));
    CHECK(r.evaluations == 1);
  }
  SUBCASE("linearly decreasing accepts the first trial") {
    auto phi = [](double a) { return 3.0 - 0.5 * a; };
    const LineSearchResult r = line_search(phi, 3.0, -0.5);
    CHECK(r.success);
    CHECK(r.alpha == doctest::Approx(1.0));
    CHECK(r.evaluations == 1);
  }
  SUBCASE("infinite trial values trigger backtracking") {
    auto phi = [](double a) {
      if (a > 0.5) return std::numeric_limits<double>::infinity();
      return (a - 0.3) * (a - 0.3);
    };
    const LineSearchResult r = line_search(phi, phi(0.0), -0.6);
    CHECK(r.success);
    CHECK(r.alpha <= 0.5);
    CHECK(r.value < phi(0.0));
  }
  SUBCASE("failure after the trial budget") {
    auto phi = [](double a) { return 1.0 + a; };  // never satisfies Armijo
    LineSearchOptions options;
    options.max_trials = 5;
    const LineSearchResult r = line_search(phi, 1.0, -1.0, options);
    CHECK(!r.success);
    CHECK(r.evaluations == 5);
  }
  SUBCASE("non-descent slope rejected") {
    auto phi = [](double a) { return a; };
    CHECK_THROWS_AS(line_search(phi, 0.0, 0.5), std::invalid_argument);
  }
}

TEST_CASE("stationary start terminates immediately") {
  const double T = 1.0;
  const ForwardConfig fwd{1.0, 10, 16};
  ShapeCoefficients truth = ShapeCoefficients::circle(1, 2, T, 0.45);
  const ExteriorField f = linear_data(10, 16, T);
  // same-grid direct data: mismatch is exactly zero at the truth
  const ObjectiveReport rep = evaluate_objective(truth, f, ExteriorField(10, 16), fwd);
  const SpaceTimeMesh mesh = build_mesh(truth, 1.0, 10, 16);
  const ExteriorField g = exterior_part(mesh, rep.neumann_state->values);

  InversionSettings settings;
  settings.max_iterations = 10;
  const InversionResult result = run_inversion(truth, f, g, fwd, settings, truth);
  CHECK(result.history.status == InversionStatus::gradient_converged);
  CHECK(result.history.records.size() == 1);
  CHECK(result.history.records[0].value == 0.0);
  CHECK(result.history.records[0].l2_error == 0.0);
}

TEST_CASE("coarse circle recovery with accepted values never increasing") {
  const double T = 1.0;
  const int nt = 16, nx = 20, nk = 2, nl = 1;
  const ForwardConfig fwd{1.0, nt, nx};
  ShapeCoefficients truth = ShapeCoefficients::circle(nl, nk, T, 0.5);

  // Same-grid data via the indirect route; the cross-grid configuration is
  // exercised by the acceptance suite.
  const SpaceTimeMesh mesh_i = build_mesh(truth, 1.0, nt, nx);
  const ExteriorField g = synth_forward(mesh_i, linear_data(nt, nx, T));

  InversionSettings settings;
  settings.max_iterations = 25;
  const ShapeCoefficients start = ShapeCoefficients::circle(nl, nk, T, 0.35);
  const InversionResult result = run_inversion(start, linear_data(nt, nx, T), g,
                                               fwd, settings, truth);
  REQUIRE(!result.history.records.empty());
  for (std::size_t i = 1; i < result.history.records.size(); ++i)
    CHECK(result.history.records[i].value <= result.history.records[i - 1].value);
  CHECK(coefficient_error(result.coefficients, truth) < 1e-2);
}

TEST_CASE("radial symmetry is preserved across iterations") {
  const double T = 1.0;
  const int nt = 12, nx = 16, nk = 2, nl = 1;
  const ForwardConfig fwd{1.0, nt, nx};
  ShapeCoefficients truth = ShapeCoefficients::circle(nl, nk, T, 0.5);
  const SpaceTimeMesh mesh_i = build_mesh(truth, 1.0, nt, nx);
  BoundaryField data(nt, nx);
  for (int n = 0; n <= nt; ++n)
    for (int i = 0; i < nx; ++i) data.at(n, nx + i) = mesh_i.step * n;
  DirichletProblem problem{&mesh_i, data};
  const ExteriorField g = exterior_part(mesh_i, solve_dirichlet(problem).values);

  InversionSettings settings;
  settings.max_iterations = 8;
  const ShapeCoefficients start = ShapeCoefficients::circle(nl, nk, T, 0.4);
  const InversionResult result =
      run_inversion(start, linear_data(nt, nx, T), g, fwd, settings, truth);
  const int K = result.coefficients.n_fourier();
  for (int l = 0; l <= result.coefficients.n_legendre(); ++l)
    for (int j = 0; j < result.coefficients.row_size(); ++j) {
      if (j == K - 1) continue;
      CHECK(std::abs(result.coefficients.at(l, j)) < 1e-10);
    }
}

TEST_CASE("first-iteration geometry faults abort with diagnostics") {
  const ForwardConfig fwd{1.0, 6, 16};
  ShapeCoefficients bad = ShapeCoefficients::circle(1, 2, 1.0, 1.5);
  InversionSettings settings;
  CHECK_THROWS_AS(run_inversion(bad, linear_data(6, 16, 1.0), ExteriorField(6, 16),
                                fwd, settings),
                  geometry_fault);
}
