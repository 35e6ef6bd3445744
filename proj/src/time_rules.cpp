#include "heatshape/time_rules.hpp"

#include <cmath>

#include "heatshape/errors.hpp"

namespace heatshape {

namespace {

constexpr double kPi = 3.141592653589793238462643383279;
const double kSqrt4Pi = std::sqrt(4.0 * kPi);

}  // namespace

CorrectedTimeRule CorrectedTimeRule::build(int n_time, double step,
                                           TimeRuleVariant variant) {
  if (n_time < 1) throw config_error("corrected_rule: n_time must be >= 1");
  if (!(step > 0.0)) throw config_error("corrected_rule: step must be positive");

  CorrectedTimeRule rule;
  rule.n_time_ = n_time;
  rule.step_ = step;
  rule.variant_ = variant;
  rule.row_offset_.resize(static_cast<std::size_t>(n_time) + 1);
  std::size_t total = 0;
  for (int n = 0; n <= n_time; ++n) {
    rule.row_offset_[static_cast<std::size_t>(n)] = total;
    total += static_cast<std::size_t>(n) + 1;
  }
  rule.weights_.assign(total, 0.0);

  const double h = step;
  if (variant == TimeRuleVariant::right_endpoint) {
    for (int n = 1; n <= n_time; ++n) {
      const double tn = h * n;
      double* row = rule.weights_.data() + rule.row_offset_[static_cast<std::size_t>(n)];
      double sum_prime = 0.0;
      for (int j = 0; j < n; ++j) {
        const double half = (j == 0) ? 0.5 : 1.0;
        const double w = half * h / std::sqrt(tn - h * j);
        row[j] = w;
        sum_prime += w;
      }
      const double mu_n = std::sqrt(tn / kPi) - sum_prime / kSqrt4Pi;
      row[n] = kSqrt4Pi * mu_n;
    }
  } else {
    // Per-interval moments of 1/(sqrt(tau) sqrt(t_n - tau)) against the two
    // linear hat functions: with theta(tau) = arcsin(sqrt(tau/t_n)),
    //   I0(a,b) = 2 (theta(b) - theta(a)),
    //   I1(a,b) = t_n (theta(b) - theta(a))
    //             - (sqrt(b (t_n-b)) - sqrt(a (t_n-a))).
    for (int n = 1; n <= n_time; ++n) {
      const double tn = h * n;
      double* row = rule.weights_.data() + rule.row_offset_[static_cast<std::size_t>(n)];
      for (int j = 0; j < n; ++j) {
        const double a = h * j;
        const double b = h * (j + 1);
        const double theta_a = std::asin(std::sqrt(a / tn));
        const double theta_b = (j + 1 == n) ? 0.5 * kPi : std::asin(std::sqrt(b / tn));
        const double i0 = 2.0 * (theta_b - theta_a);
        const double i1 = tn * (theta_b - theta_a) -
                          (std::sqrt(b * (tn - b)) - std::sqrt(a * (tn - a)));
        row[j] += (b * i0 - i1) / h;
        row[j + 1] += (i1 - a * i0) / h;
      }
    }
  }
  return rule;
}

double CorrectedTimeRule::weight(int n, int j) const {
  if (n < 0 || n > n_time_ || j < 0 || j > n)
    throw config_error("CorrectedTimeRule::weight: index out of range");
  return weights_[row_offset_[static_cast<std::size_t>(n)] + static_cast<std::size_t>(j)];
}

double CorrectedTimeRule::mu(int n) const {
  if (variant_ != TimeRuleVariant::right_endpoint)
    throw config_error("CorrectedTimeRule::mu: only defined for the right-endpoint rule");
  return weight(n, n) / kSqrt4Pi;
}

CorrectedTimeRule corrected_rule(int n_time, double step, TimeRuleVariant variant) {
  return CorrectedTimeRule::build(n_time, step, variant);
}

}  // namespace heatshape
