#include "heatshape/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "heatshape/errors.hpp"
#include "heatshape/fft.hpp"

namespace heatshape {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

BoundarySample interior_from_radius(const RadiusEval& r, double phi) {
  if (!(r.w > 0.0)) throw geometry_fault("boundary_sample: nonpositive radius");
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  BoundarySample out;
  out.point[0] = r.w * c;
  out.point[1] = r.w * s;
  const double J = std::sqrt(r.w * r.w + r.w_phi * r.w_phi);
  out.arc_element = J;
  // Outward of Omega_t = into the void.
  out.unit_normal[0] = -(r.w * c + r.w_phi * s) / J;
  out.unit_normal[1] = -(r.w * s - r.w_phi * c) / J;
  out.normal_velocity = -r.w * r.w_t / J;
  out.curvature = (r.w * r.w + 2.0 * r.w_phi * r.w_phi - r.w * r.w_phiphi) / (J * J * J);
  return out;
}

}  // namespace

BoundarySample boundary_sample(const ShapeCoefficients& coeffs, double t,
                               double phi) {
  return interior_from_radius(coeffs.radius(t, phi), phi);
}

BoundarySample exterior_sample(double radius, double phi) {
  BoundarySample out;
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  out.point[0] = radius * c;
  out.point[1] = radius * s;
  out.unit_normal[0] = c;
  out.unit_normal[1] = s;
  out.arc_element = radius;
  out.normal_velocity = 0.0;
  out.curvature = -1.0 / radius;
  return out;
}

double SpaceTimeMesh::angle_of(int node) const {
  const int i = node % n_space;
  return kTwoPi * i / n_space;
}

SpaceTimeMesh SpaceTimeMesh::reversed_in_time() const {
  SpaceTimeMesh out = *this;
  std::reverse(out.levels.begin(), out.levels.end());
  for (auto& lvl : out.levels)
    for (auto& v : lvl.vel) v = -v;
  return out;
}

SpaceTimeMesh build_mesh(const ShapeCoefficients& coeffs,
                         double exterior_radius, int n_time, int n_space) {
  if (n_time < 1 || n_space < 4)
    throw config_error("build_mesh: need n_time >= 1 and n_space >= 4");
  if (n_space <= 2 * coeffs.n_fourier())
    throw config_error("build_mesh: n_space must exceed twice the Fourier degree");
  if (!(exterior_radius > 0.0))
    throw config_error("build_mesh: exterior radius must be positive");

  SpaceTimeMesh mesh;
  mesh.n_time = n_time;
  mesh.n_space = n_space;
  mesh.horizon = coeffs.horizon();
  mesh.step = coeffs.horizon() / n_time;
  mesh.exterior_radius = exterior_radius;
  mesh.levels.resize(static_cast<std::size_t>(n_time) + 1);

  // Exterior nodes are time-independent.
  LevelNodes exterior;
  exterior.resize(n_space);
  for (int i = 0; i < n_space; ++i) {
    const double phi = kTwoPi * i / n_space;
    const BoundarySample s = exterior_sample(exterior_radius, phi);
    exterior.px[static_cast<std::size_t>(i)] = s.point[0];
    exterior.py[static_cast<std::size_t>(i)] = s.point[1];
    exterior.nx[static_cast<std::size_t>(i)] = s.unit_normal[0];
    exterior.ny[static_cast<std::size_t>(i)] = s.unit_normal[1];
    exterior.jac[static_cast<std::size_t>(i)] = s.arc_element;
    exterior.vel[static_cast<std::size_t>(i)] = s.normal_velocity;
    exterior.curv[static_cast<std::size_t>(i)] = s.curvature;
  }

  const int K = coeffs.n_fourier();
  for (int n = 0; n <= n_time; ++n) {
    const double t = mesh.step * n;
    LevelNodes& lvl = mesh.levels[static_cast<std::size_t>(n)];
    lvl.resize(2 * n_space);

    // Angular stacks collapsed over time, then one FFT per quantity.
    const auto row = coeffs.angular_row(t);
    const auto row_dt = coeffs.angular_row_dt(t);
    std::vector<double> ac(static_cast<std::size_t>(K) + 1, 0.0), as(static_cast<std::size_t>(K), 0.0);
    std::vector<double> tc(static_cast<std::size_t>(K) + 1, 0.0), ts(static_cast<std::size_t>(K), 0.0);
    ac[0] = row[static_cast<std::size_t>(K - 1)];
    tc[0] = row_dt[static_cast<std::size_t>(K - 1)];
    for (int k = 1; k <= K; ++k) {
      ac[static_cast<std::size_t>(k)] = row[static_cast<std::size_t>(K - 1 + k)];
      tc[static_cast<std::size_t>(k)] = row_dt[static_cast<std::size_t>(K - 1 + k)];
      if (k <= K - 1) {
        as[static_cast<std::size_t>(k - 1)] = row[static_cast<std::size_t>(K - 1 - k)];
        ts[static_cast<std::size_t>(k - 1)] = row_dt[static_cast<std::size_t>(K - 1 - k)];
      }
    }
    // d/dphi: k b_k cos(k phi) - k a_k sin(k phi); d2/dphi2 scales by -k^2.
    std::vector<double> dc(static_cast<std::size_t>(K) + 1, 0.0), ds(static_cast<std::size_t>(K), 0.0);
    std::vector<double> d2c(static_cast<std::size_t>(K) + 1, 0.0);
    std::vector<double> d2s(static_cast<std::size_t>(std::max(K - 1, 0)), 0.0);
    for (int k = 1; k <= K; ++k) {
      const double a = ac[static_cast<std::size_t>(k)];
      ds[static_cast<std::size_t>(k - 1)] = -k * a;
      d2c[static_cast<std::size_t>(k)] = -static_cast<double>(k) * k * a;
      if (k <= K - 1) {
        const double b = as[static_cast<std::size_t>(k - 1)];
        dc[static_cast<std::size_t>(k)] = k * b;
        d2s[static_cast<std::size_t>(k - 1)] = -static_cast<double>(k) * k * b;
      }
    }

    const auto w_vals = fft::eval_trig_series(ac, as, n_space);
    const auto wt_vals = fft::eval_trig_series(tc, ts, n_space);
    const auto wp_vals = fft::eval_trig_series(dc, ds, n_space);
    const auto wpp_vals = fft::eval_trig_series(d2c, d2s, n_space);

    for (int i = 0; i < n_space; ++i) {
      const double phi = kTwoPi * i / n_space;
      RadiusEval r;
      r.w = w_vals[static_cast<std::size_t>(i)];
      r.w_t = wt_vals[static_cast<std::size_t>(i)];
      r.w_phi = wp_vals[static_cast<std::size_t>(i)];
      r.w_phiphi = wpp_vals[static_cast<std::size_t>(i)];
      if (!(r.w > 0.0) || !(r.w < exterior_radius)) {
        std::ostringstream msg;
        msg << "build_mesh: radius " << r.w << " outside (0, " << exterior_radius
            << ") at t=" << t << ", phi=" << phi;
        throw geometry_fault(msg.str());
      }
      const BoundarySample s = interior_from_radius(r, phi);
      lvl.px[static_cast<std::size_t>(i)] = s.point[0];
      lvl.py[static_cast<std::size_t>(i)] = s.point[1];
      lvl.nx[static_cast<std::size_t>(i)] = s.unit_normal[0];
      lvl.ny[static_cast<std::size_t>(i)] = s.unit_normal[1];
      lvl.jac[static_cast<std::size_t>(i)] = s.arc_element;
      lvl.vel[static_cast<std::size_t>(i)] = s.normal_velocity;
      lvl.curv[static_cast<std::size_t>(i)] = s.curvature;
    }
    for (int i = 0; i < n_space; ++i) {
      const std::size_t d = static_cast<std::size_t>(n_space + i);
      const std::size_t s = static_cast<std::size_t>(i);
      lvl.px[d] = exterior.px[s];
      lvl.py[d] = exterior.py[s];
      lvl.nx[d] = exterior.nx[s];
      lvl.ny[d] = exterior.ny[s];
      lvl.jac[d] = exterior.jac[s];
      lvl.vel[d] = exterior.vel[s];
      lvl.curv[d] = exterior.curv[s];
    }
  }
  return mesh;
}

}  // namespace heatshape
