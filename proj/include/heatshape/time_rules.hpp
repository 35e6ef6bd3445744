#pragma once

#include <vector>

namespace heatshape {

enum class TimeRuleVariant {
  right_endpoint,   ///< weights for  int_0^{t_n} f(tau)/sqrt(t_n - tau) dtau
  both_endpoints,   ///< weights for  int_0^{t_n} g(tau)/(sqrt(tau) sqrt(t_n - tau)) dtau
};

/// Lower-triangular product-integration weights for the weakly singular
/// time integrals of the marching scheme.
///
/// right_endpoint: trapezoidal rule with a singularity correction,
///   w(n,j) = h / sqrt(t_n - t_j) for 0 < j < n, half that for j = 0,
///   w(n,n) = sqrt(4 pi) mu_n with
///   mu_n = sqrt(t_n/pi) - h/sqrt(4 pi) * sum'_{j<n} 1/sqrt(t_n - t_j).
///   Constants are integrated exactly: sum_j w(n,j) = 2 sqrt(t_n).
///
/// both_endpoints: exact moments of 1/(sqrt(tau) sqrt(t_n - tau)) against
///   piecewise-linear interpolation of the smooth cofactor on the grid;
///   rows applied to g = 1 give pi exactly.
class CorrectedTimeRule {
 public:
  static CorrectedTimeRule build(int n_time, double step, TimeRuleVariant variant);

  int n_time() const { return n_time_; }
  double step() const { return step_; }
  TimeRuleVariant variant() const { return variant_; }

  double weight(int n, int j) const;
  /// Coincidence coefficient of the right-endpoint rule, weight(n,n)/sqrt(4 pi).
  double mu(int n) const;

 private:
  CorrectedTimeRule() = default;

  int n_time_ = 0;
  double step_ = 0.0;
  TimeRuleVariant variant_ = TimeRuleVariant::right_endpoint;
  std::vector<double> weights_;  ///< packed rows, row n has n+1 entries
  std::vector<std::size_t> row_offset_;
};

/// Convenience factory mirroring the rule variants above.
CorrectedTimeRule corrected_rule(int n_time, double step, TimeRuleVariant variant);

}  // namespace heatshape
