#include "heatshape/shape_coefficients.hpp"

#include <cmath>
#include <stdexcept>

#include "heatshape/errors.hpp"

namespace heatshape {

namespace {

// P_l(s) and P_l'(s) on [-1, 1] by the three-term recurrence.
void legendre_raw(double s, int n, std::vector<double>& p,
                  std::vector<double>* dp) {
  p.assign(static_cast<std::size_t>(n) + 1, 0.0);
  if (dp) dp->assign(static_cast<std::size_t>(n) + 1, 0.0);
  p[0] = 1.0;
  if (n >= 1) p[1] = s;
  for (int l = 2; l <= n; ++l) {
    p[static_cast<std::size_t>(l)] =
        ((2.0 * l - 1.0) * s * p[static_cast<std::size_t>(l - 1)] -
         (l - 1.0) * p[static_cast<std::size_t>(l - 2)]) /
        static_cast<double>(l);
  }
  if (dp) {
    // P_l' = P_{l-2}' + (2l-1) P_{l-1}, stable at the endpoints.
    if (n >= 1) (*dp)[1] = 1.0;
    for (int l = 2; l <= n; ++l) {
      (*dp)[static_cast<std::size_t>(l)] =
          (*dp)[static_cast<std::size_t>(l - 2)] +
          (2.0 * l - 1.0) * p[static_cast<std::size_t>(l - 1)];
    }
  }
}

void check_time(double t, double horizon) {
  if (!(t >= 0.0 && t <= horizon))
    throw std::domain_error("legendre_basis: t outside [0, T]");
}

}  // namespace

std::vector<double> legendre_basis(double t, int n_legendre, double horizon) {
  check_time(t, horizon);
  if (n_legendre < 0) throw std::domain_error("legendre_basis: negative degree");
  const double s = 2.0 * t / horizon - 1.0;
  std::vector<double> p;
  legendre_raw(s, n_legendre, p, nullptr);
  for (int l = 0; l <= n_legendre; ++l)
    p[static_cast<std::size_t>(l)] *= std::sqrt((2.0 * l + 1.0) / horizon);
  return p;
}

std::vector<double> legendre_basis_derivative(double t, int n_legendre,
                                              double horizon) {
  check_time(t, horizon);
  if (n_legendre < 0) throw std::domain_error("legendre_basis: negative degree");
  const double s = 2.0 * t / horizon - 1.0;
  std::vector<double> p, dp;
  legendre_raw(s, n_legendre, p, &dp);
  for (int l = 0; l <= n_legendre; ++l)
    dp[static_cast<std::size_t>(l)] *=
        std::sqrt((2.0 * l + 1.0) / horizon) * 2.0 / horizon;
  return dp;
}

ShapeCoefficients::ShapeCoefficients(int n_legendre, int n_fourier,
                                     double horizon)
    : n_legendre_(n_legendre), n_fourier_(n_fourier), horizon_(horizon) {
  if (n_legendre < 0 || n_fourier < 1)
    throw config_error("ShapeCoefficients: need n_legendre >= 0, n_fourier >= 1");
  if (!(horizon > 0.0)) throw config_error("ShapeCoefficients: horizon must be positive");
  coeffs_.assign(static_cast<std::size_t>(n_params()), 0.0);
}

double& ShapeCoefficients::at(int l, int column) {
  return coeffs_[static_cast<std::size_t>(l * row_size() + column)];
}

double ShapeCoefficients::at(int l, int column) const {
  return coeffs_[static_cast<std::size_t>(l * row_size() + column)];
}

double& ShapeCoefficients::alpha(int k, int l) {
  if (k < 0 || k > n_fourier_) throw config_error("alpha: cosine index out of range");
  return at(l, n_fourier_ - 1 + k);
}

double ShapeCoefficients::alpha(int k, int l) const {
  if (k < 0 || k > n_fourier_) throw config_error("alpha: cosine index out of range");
  return at(l, n_fourier_ - 1 + k);
}

double& ShapeCoefficients::beta(int k, int l) {
  if (k < 1 || k > n_fourier_ - 1) throw config_error("beta: sine index out of range");
  return at(l, n_fourier_ - 1 - k);
}

double ShapeCoefficients::beta(int k, int l) const {
  if (k < 1 || k > n_fourier_ - 1) throw config_error("beta: sine index out of range");
  return at(l, n_fourier_ - 1 - k);
}

ShapeCoefficients ShapeCoefficients::from_flat(int n_legendre, int n_fourier,
                                               double horizon,
                                               const std::vector<double>& values) {
  ShapeCoefficients c(n_legendre, n_fourier, horizon);
  if (values.size() != c.coeffs_.size())
    throw config_error("ShapeCoefficients::from_flat: wrong length");
  c.coeffs_ = values;
  return c;
}

ShapeCoefficients ShapeCoefficients::circle(int n_legendre, int n_fourier,
                                            double horizon, double radius) {
  ShapeCoefficients c(n_legendre, n_fourier, horizon);
  // L_0 = 1/sqrt(T), so the constant coefficient is radius*sqrt(T).
  c.alpha(0, 0) = radius * std::sqrt(horizon);
  return c;
}

std::vector<double> ShapeCoefficients::angular_row(double t) const {
  const auto L = legendre_basis(t, n_legendre_, horizon_);
  std::vector<double> row(static_cast<std::size_t>(row_size()), 0.0);
  for (int l = 0; l <= n_legendre_; ++l) {
    const double Ll = L[static_cast<std::size_t>(l)];
    for (int j = 0; j < row_size(); ++j) row[static_cast<std::size_t>(j)] += Ll * at(l, j);
  }
  return row;
}

std::vector<double> ShapeCoefficients::angular_row_dt(double t) const {
  const auto dL = legendre_basis_derivative(t, n_legendre_, horizon_);
  std::vector<double> row(static_cast<std::size_t>(row_size()), 0.0);
  for (int l = 0; l <= n_legendre_; ++l) {
    const double dLl = dL[static_cast<std::size_t>(l)];
    for (int j = 0; j < row_size(); ++j) row[static_cast<std::size_t>(j)] += dLl * at(l, j);
  }
  return row;
}

RadiusEval ShapeCoefficients::radius(double t, double phi) const {
  const auto L = legendre_basis(t, n_legendre_, horizon_);
  const auto dL = legendre_basis_derivative(t, n_legendre_, horizon_);
  const int K = n_fourier_;
  RadiusEval r;
  for (int l = 0; l <= n_legendre_; ++l) {
    double om = alpha(0, l);
    double om_p = 0.0;
    double om_pp = 0.0;
    for (int k = 1; k <= K; ++k) {
      const double a = alpha(k, l);
      const double b = (k <= K - 1) ? beta(k, l) : 0.0;
      const double c = std::cos(k * phi);
      const double s = std::sin(k * phi);
      om += a * c + b * s;
      om_p += static_cast<double>(k) * (-a * s + b * c);
      om_pp += -static_cast<double>(k) * k * (a * c + b * s);
    }
    r.w += L[static_cast<std::size_t>(l)] * om;
    r.w_phi += L[static_cast<std::size_t>(l)] * om_p;
    r.w_phiphi += L[static_cast<std::size_t>(l)] * om_pp;
    r.w_t += dL[static_cast<std::size_t>(l)] * om;
  }
  return r;
}

double trig_stack_value(int n_fourier, int column, double phi) {
  const int K = n_fourier;
  if (column < K - 1) return std::sin((K - 1 - column) * phi);
  if (column == K - 1) return 1.0;
  return std::cos((column - (K - 1)) * phi);
}

double coefficient_error(const ShapeCoefficients& a,
                         const ShapeCoefficients& b) {
  if (a.n_legendre() != b.n_legendre() || a.n_fourier() != b.n_fourier())
    throw config_error("coefficient_error: dimension mismatch");
  double sum = 0.0;
  const auto& fa = a.flat();
  const auto& fb = b.flat();
  for (std::size_t i = 0; i < fa.size(); ++i) {
    const double d = fa[i] - fb[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

}  // namespace heatshape
