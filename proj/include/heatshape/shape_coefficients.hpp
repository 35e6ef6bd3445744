#pragma once

#include <vector>

namespace heatshape {

/// Legendre polynomials rescaled to [0, T] and normalized to unit L2(0,T)
/// norm, evaluated by the three-term recurrence.  Returns L_0(t)..L_n(t).
std::vector<double> legendre_basis(double t, int n_legendre, double horizon);

/// Derivatives dL_l/dt of the same basis.
std::vector<double> legendre_basis_derivative(double t, int n_legendre,
                                              double horizon);

/// Pointwise radius of the star-shaped boundary and its derivatives.
struct RadiusEval {
  double w = 0.0;        ///< w(t, phi)
  double w_phi = 0.0;    ///< d/dphi
  double w_t = 0.0;      ///< d/dt
  double w_phiphi = 0.0; ///< second angular derivative
};

/// Coefficient tensor of the time- and angle-dependent radius
///   w(t, phi) = sum_l L_l(t) * [ alpha_0l + sum_k (alpha_kl cos k phi
///               + beta_kl sin k phi) + alpha_{K,l} cos K phi ].
/// Row l is stored in the gradient-stack ordering
///   [ beta_{K-1,l}, ..., beta_{1,l}, alpha_{0,l}, alpha_{1,l}, ..., alpha_{K,l} ],
/// so a row has 2K entries and flattening is row-major over (l, column).
class ShapeCoefficients {
 public:
  ShapeCoefficients(int n_legendre, int n_fourier, double horizon);

  int n_legendre() const { return n_legendre_; }
  int n_fourier() const { return n_fourier_; }
  double horizon() const { return horizon_; }
  int row_size() const { return 2 * n_fourier_; }
  int n_params() const { return (n_legendre_ + 1) * row_size(); }

  double& at(int l, int column);
  double at(int l, int column) const;

  double& alpha(int k, int l);
  double alpha(int k, int l) const;
  double& beta(int k, int l);
  double beta(int k, int l) const;

  /// Row-major (l, column) flattening; matches the gradient stack.
  const std::vector<double>& flat() const { return coeffs_; }
  std::vector<double>& flat() { return coeffs_; }

  static ShapeCoefficients from_flat(int n_legendre, int n_fourier,
                                     double horizon,
                                     const std::vector<double>& values);

  /// Coefficients of a time-independent circle of the given radius.
  static ShapeCoefficients circle(int n_legendre, int n_fourier,
                                  double horizon, double radius);

  RadiusEval radius(double t, double phi) const;

  /// Collapses the time direction: angular stack coefficients
  /// a_j(t) = sum_l L_l(t) coeffs(l, j), and the same for dL/dt.
  std::vector<double> angular_row(double t) const;
  std::vector<double> angular_row_dt(double t) const;

 private:
  int n_legendre_;
  int n_fourier_;
  double horizon_;
  std::vector<double> coeffs_;
};

/// Value of the trig-stack entry for a row column at angle phi:
/// columns [0, K-1) are sin((K-1-j) phi), column K-1 is 1,
/// column K-1+k is cos(k phi).
double trig_stack_value(int n_fourier, int column, double phi);

/// Euclidean norm of the flattened difference; both operands must share
/// (n_legendre, n_fourier).
double coefficient_error(const ShapeCoefficients& a,
                         const ShapeCoefficients& b);

}  // namespace heatshape
