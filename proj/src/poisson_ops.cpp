#include "heatshape/poisson_ops.hpp"

#include <cmath>

#include "heatshape/errors.hpp"

namespace heatshape {

namespace {

constexpr double kPi = 3.141592653589793238462643383279;
constexpr double kTwoPi = 2.0 * kPi;
// exp(-40) ~ 4e-18; contributions below that are dropped.
constexpr double kExpCutoff = 40.0;

void check_levels(const SpaceTimeMesh& mesh, int source_level, int target_level) {
  if (source_level > target_level)
    throw ordering_error("poisson operator: source level after target level");
  if (source_level < 0 || target_level > mesh.n_time)
    throw ordering_error("poisson operator: level out of range");
}

}  // namespace

double heat_kernel(int dim, double dt, double r2) {
  if (!(dt > 0.0)) throw std::domain_error("heat_kernel: dt must be positive");
  const double pref = std::pow(4.0 * kPi * dt, -0.5 * (dim - 1));
  return pref * std::exp(-r2 / (4.0 * dt));
}

void poisson_single(const SpaceTimeMesh& mesh, int source_level,
                    int target_level, const std::vector<double>& density,
                    std::vector<double>& out) {
  check_levels(mesh, source_level, target_level);
  const int m = mesh.n_nodes();
  out.assign(static_cast<std::size_t>(m), 0.0);
  if (source_level == target_level) {
    for (int i = 0; i < m; ++i) out[static_cast<std::size_t>(i)] = density[static_cast<std::size_t>(i)];
    return;
  }
  const double dt = mesh.step * (target_level - source_level);
  const double inv4dt = 1.0 / (4.0 * dt);
  const double pref = 1.0 / std::sqrt(4.0 * kPi * dt);
  const double dphi = kTwoPi / mesh.n_space;
  const LevelNodes& src = mesh.levels[static_cast<std::size_t>(source_level)];
  const LevelNodes& tgt = mesh.levels[static_cast<std::size_t>(target_level)];
  for (int i = 0; i < m; ++i) {
    const double xi = tgt.px[static_cast<std::size_t>(i)];
    const double yi = tgt.py[static_cast<std::size_t>(i)];
    double acc = 0.0;
    for (int s = 0; s < m; ++s) {
      const double dx = xi - src.px[static_cast<std::size_t>(s)];
      const double dy = yi - src.py[static_cast<std::size_t>(s)];
      const double arg = (dx * dx + dy * dy) * inv4dt;
      if (arg > kExpCutoff) continue;
      acc += std::exp(-arg) * density[static_cast<std::size_t>(s)] * src.jac[static_cast<std::size_t>(s)];
    }
    out[static_cast<std::size_t>(i)] = acc * pref * dphi;
  }
}

void poisson_double(const SpaceTimeMesh& mesh, int source_level,
                    int target_level, const std::vector<double>& density,
                    std::vector<double>& out, bool include_velocity,
                    double curvature_factor) {
  check_levels(mesh, source_level, target_level);
  const int m = mesh.n_nodes();
  out.assign(static_cast<std::size_t>(m), 0.0);
  const LevelNodes& tgt = mesh.levels[static_cast<std::size_t>(target_level)];
  if (source_level == target_level) {
    for (int i = 0; i < m; ++i)
      out[static_cast<std::size_t>(i)] =
          curvature_factor * tgt.curv[static_cast<std::size_t>(i)] * density[static_cast<std::size_t>(i)];
    return;
  }
  const double dt = mesh.step * (target_level - source_level);
  const double inv4dt = 1.0 / (4.0 * dt);
  const double inv2dt = 1.0 / (2.0 * dt);
  const double pref = 1.0 / std::sqrt(4.0 * kPi * dt);
  const double dphi = kTwoPi / mesh.n_space;
  const LevelNodes& src = mesh.levels[static_cast<std::size_t>(source_level)];
  for (int i = 0; i < m; ++i) {
    const double xi = tgt.px[static_cast<std::size_t>(i)];
    const double yi = tgt.py[static_cast<std::size_t>(i)];
    double acc = 0.0;
    for (int s = 0; s < m; ++s) {
      const double dx = xi - src.px[static_cast<std::size_t>(s)];
      const double dy = yi - src.py[static_cast<std::size_t>(s)];
      const double arg = (dx * dx + dy * dy) * inv4dt;
      if (arg > kExpCutoff) continue;
      double fac = (dx * src.nx[static_cast<std::size_t>(s)] + dy * src.ny[static_cast<std::size_t>(s)]) * inv2dt;
      if (include_velocity) fac -= 0.5 * src.vel[static_cast<std::size_t>(s)];
      acc += std::exp(-arg) * fac * density[static_cast<std::size_t>(s)] * src.jac[static_cast<std::size_t>(s)];
    }
    out[static_cast<std::size_t>(i)] = acc * pref * dphi;
  }
}

void poisson_adjoint_double(const SpaceTimeMesh& mesh, int source_level,
                            int target_level, const std::vector<double>& density,
                            std::vector<double>& out, bool include_velocity,
                            double curvature_factor) {
  check_levels(mesh, source_level, target_level);
  const int m = mesh.n_nodes();
  out.assign(static_cast<std::size_t>(m), 0.0);
  const LevelNodes& tgt = mesh.levels[static_cast<std::size_t>(target_level)];
  if (source_level == target_level) {
    for (int i = 0; i < m; ++i)
      out[static_cast<std::size_t>(i)] =
          curvature_factor * tgt.curv[static_cast<std::size_t>(i)] * density[static_cast<std::size_t>(i)];
    return;
  }
  const double dt = mesh.step * (target_level - source_level);
  const double inv4dt = 1.0 / (4.0 * dt);
  const double inv2dt = 1.0 / (2.0 * dt);
  const double pref = 1.0 / std::sqrt(4.0 * kPi * dt);
  const double dphi = kTwoPi / mesh.n_space;
  const LevelNodes& src = mesh.levels[static_cast<std::size_t>(source_level)];
  for (int i = 0; i < m; ++i) {
    const double xi = tgt.px[static_cast<std::size_t>(i)];
    const double yi = tgt.py[static_cast<std::size_t>(i)];
    const double nxi = tgt.nx[static_cast<std::size_t>(i)];
    const double nyi = tgt.ny[static_cast<std::size_t>(i)];
    const double vel_i = include_velocity ? tgt.vel[static_cast<std::size_t>(i)] : 0.0;
    double acc = 0.0;
    for (int s = 0; s < m; ++s) {
      const double dx = xi - src.px[static_cast<std::size_t>(s)];
      const double dy = yi - src.py[static_cast<std::size_t>(s)];
      const double arg = (dx * dx + dy * dy) * inv4dt;
      if (arg > kExpCutoff) continue;
      const double fac = -(dx * nxi + dy * nyi) * inv2dt + 0.5 * vel_i;
      acc += std::exp(-arg) * fac * density[static_cast<std::size_t>(s)] * src.jac[static_cast<std::size_t>(s)];
    }
    out[static_cast<std::size_t>(i)] = acc * pref * dphi;
  }
}

double poisson_single_at_point(const SpaceTimeMesh& mesh, int source_level,
                               double dt, double x, double y,
                               const std::vector<double>& density) {
  if (!(dt > 0.0)) throw std::domain_error("poisson_single_at_point: dt <= 0");
  const int m = mesh.n_nodes();
  const double inv4dt = 1.0 / (4.0 * dt);
  const double pref = 1.0 / std::sqrt(4.0 * kPi * dt);
  const double dphi = kTwoPi / mesh.n_space;
  const LevelNodes& src = mesh.levels[static_cast<std::size_t>(source_level)];
  double acc = 0.0;
  for (int s = 0; s < m; ++s) {
    const double dx = x - src.px[static_cast<std::size_t>(s)];
    const double dy = y - src.py[static_cast<std::size_t>(s)];
    acc += std::exp(-(dx * dx + dy * dy) * inv4dt) * density[static_cast<std::size_t>(s)] *
           src.jac[static_cast<std::size_t>(s)];
  }
  return acc * pref * dphi;
}

double poisson_double_at_point(const SpaceTimeMesh& mesh, int source_level,
                               double dt, double x, double y,
                               const std::vector<double>& density,
                               bool include_velocity) {
  if (!(dt > 0.0)) throw std::domain_error("poisson_double_at_point: dt <= 0");
  const int m = mesh.n_nodes();
  const double inv4dt = 1.0 / (4.0 * dt);
  const double inv2dt = 1.0 / (2.0 * dt);
  const double pref = 1.0 / std::sqrt(4.0 * kPi * dt);
  const double dphi = kTwoPi / mesh.n_space;
  const LevelNodes& src = mesh.levels[static_cast<std::size_t>(source_level)];
  double acc = 0.0;
  for (int s = 0; s < m; ++s) {
    const double dx = x - src.px[static_cast<std::size_t>(s)];
    const double dy = y - src.py[static_cast<std::size_t>(s)];
    double fac = (dx * src.nx[static_cast<std::size_t>(s)] + dy * src.ny[static_cast<std::size_t>(s)]) * inv2dt;
    if (include_velocity) fac -= 0.5 * src.vel[static_cast<std::size_t>(s)];
    acc += std::exp(-(dx * dx + dy * dy) * inv4dt) * fac * density[static_cast<std::size_t>(s)] *
           src.jac[static_cast<std::size_t>(s)];
  }
  return acc * pref * dphi;
}

void accumulate_history(const SpaceTimeMesh& mesh, int target_level,
                        const std::vector<HistoryTerm>& terms,
                        std::vector<double>& single_acc,
                        std::vector<double>& double_acc,
                        bool include_velocity) {
  const int m = mesh.n_nodes();
  single_acc.assign(static_cast<std::size_t>(m), 0.0);
  double_acc.assign(static_cast<std::size_t>(m), 0.0);
  const double dphi = kTwoPi / mesh.n_space;
  const LevelNodes& tgt = mesh.levels[static_cast<std::size_t>(target_level)];
  for (const HistoryTerm& term : terms)
    if (term.source_level >= target_level || term.source_level < 0)
      throw ordering_error("accumulate_history: source level not before target");

#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    const double xi = tgt.px[static_cast<std::size_t>(i)];
    const double yi = tgt.py[static_cast<std::size_t>(i)];
    double acc_v = 0.0;
    double acc_k = 0.0;
    for (const HistoryTerm& term : terms) {
      const double dt = mesh.step * (target_level - term.source_level);
      const double inv4dt = 1.0 / (4.0 * dt);
      const double inv2dt = 1.0 / (2.0 * dt);
      const double pref = dphi / std::sqrt(4.0 * kPi * dt);
      const LevelNodes& src = mesh.levels[static_cast<std::size_t>(term.source_level)];
      double sum_v = 0.0;
      double sum_k = 0.0;
      for (int s = 0; s < m; ++s) {
        const double dx = xi - src.px[static_cast<std::size_t>(s)];
        const double dy = yi - src.py[static_cast<std::size_t>(s)];
        const double arg = (dx * dx + dy * dy) * inv4dt;
        if (arg > kExpCutoff) continue;
        const double g = std::exp(-arg) * src.jac[static_cast<std::size_t>(s)];
        if (term.density_single) sum_v += g * term.density_single[s];
        if (term.density_double) {
          double fac = (dx * src.nx[static_cast<std::size_t>(s)] + dy * src.ny[static_cast<std::size_t>(s)]) * inv2dt;
          if (include_velocity) fac -= 0.5 * src.vel[static_cast<std::size_t>(s)];
          sum_k += g * fac * term.density_double[s];
        }
      }
      acc_v += term.coeff_single * pref * sum_v;
      acc_k += term.coeff_double * pref * sum_k;
    }
    single_acc[static_cast<std::size_t>(i)] = acc_v;
    double_acc[static_cast<std::size_t>(i)] = acc_k;
  }
}

void accumulate_adjoint_history(const SpaceTimeMesh& mesh, int target_level,
                                const std::vector<HistoryTerm>& terms,
                                std::vector<double>& out_exterior,
                                bool include_velocity) {
  const int m = mesh.n_nodes();
  const int ns = mesh.n_space;
  out_exterior.assign(static_cast<std::size_t>(ns), 0.0);
  const double dphi = kTwoPi / ns;
  const LevelNodes& tgt = mesh.levels[static_cast<std::size_t>(target_level)];
  for (const HistoryTerm& term : terms)
    if (term.source_level >= target_level || term.source_level < 0)
      throw ordering_error("accumulate_adjoint_history: source level not before target");

#pragma omp parallel for schedule(static)
  for (int e = 0; e < ns; ++e) {
    const int i = ns + e;  // exterior node index
    const double xi = tgt.px[static_cast<std::size_t>(i)];
    const double yi = tgt.py[static_cast<std::size_t>(i)];
    const double nxi = tgt.nx[static_cast<std::size_t>(i)];
    const double nyi = tgt.ny[static_cast<std::size_t>(i)];
    const double vel_i = include_velocity ? tgt.vel[static_cast<std::size_t>(i)] : 0.0;
    double acc = 0.0;
    for (const HistoryTerm& term : terms) {
      if (!term.density_single) continue;
      const double dt = mesh.step * (target_level - term.source_level);
      const double inv4dt = 1.0 / (4.0 * dt);
      const double inv2dt = 1.0 / (2.0 * dt);
      const double pref = dphi / std::sqrt(4.0 * kPi * dt);
      const LevelNodes& src = mesh.levels[static_cast<std::size_t>(term.source_level)];
      double sum = 0.0;
      for (int s = 0; s < m; ++s) {
        const double dx = xi - src.px[static_cast<std::size_t>(s)];
        const double dy = yi - src.py[static_cast<std::size_t>(s)];
        const double arg = (dx * dx + dy * dy) * inv4dt;
        if (arg > kExpCutoff) continue;
        const double fac = -(dx * nxi + dy * nyi) * inv2dt + 0.5 * vel_i;
        sum += std::exp(-arg) * fac * term.density_single[s] * src.jac[static_cast<std::size_t>(s)];
      }
      acc += term.coeff_single * pref * sum;
    }
    out_exterior[static_cast<std::size_t>(e)] = acc;
  }
}

}  // namespace heatshape
