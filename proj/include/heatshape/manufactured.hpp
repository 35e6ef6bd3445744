#pragma once

#include <functional>

#include "heatshape/boundary_field.hpp"
#include "heatshape/mesh.hpp"

namespace heatshape {

/// Adaptive Gauss-Kronrod (G7/K15) integration on [a, b].
double adaptive_integrate(const std::function<double(double)>& f, double a,
                          double b, double abs_tol = 1e-11, int max_depth = 40);

/// Exact heat solution built as the single-layer potential of a smooth
/// density on an auxiliary circle that stays strictly inside the void:
///   v(t,x) = int_0^t int_circle G_2(t - tau, |x - y|) q(tau, theta) R dtheta dtau.
/// v solves the heat equation in the tube with zero initial data, and v,
/// grad v are evaluated by adaptive direct quadrature at points bounded
/// away from the circle.
class ManufacturedSolution {
 public:
  using Density = std::function<double(double tau, double theta)>;

  ManufacturedSolution(double center_x, double center_y, double radius,
                       Density density, double abs_tol = 1e-11);

  double value(double t, double x, double y) const;
  void gradient(double t, double x, double y, double* gx, double* gy) const;
  /// Time derivative of v (used by the heat-equation self-check).
  double time_derivative(double t, double x, double y) const;

  /// gamma_1^- v = <grad v, n> + (1/2) <V,n> v at a boundary sample.
  double neumann_trace(double t, const BoundarySample& sample) const;

  /// Fills a Dirichlet data field and the reference gamma_1^- trace on all
  /// nodes of the mesh.
  BoundaryField dirichlet_data(const SpaceTimeMesh& mesh) const;
  BoundaryField reference_trace(const SpaceTimeMesh& mesh) const;

  double circle_radius() const { return radius_; }

 private:
  // Spatial circle integral of the kernel and its derivatives at time gap s.
  struct KernelMoments {
    double v = 0.0;
    double gx = 0.0;
    double gy = 0.0;
    double dt = 0.0;
  };
  KernelMoments circle_integral(double tau, double s, double x, double y) const;

  double center_x_;
  double center_y_;
  double radius_;
  Density density_;
  double abs_tol_;
};

}  // namespace heatshape
