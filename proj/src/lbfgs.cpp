#include "heatshape/lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace heatshape {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

bool LbfgsMemory::push(std::vector<double> s, std::vector<double> y) {
  const double sy = dot(s, y);
  const double ss = std::sqrt(dot(s, s));
  const double yy = std::sqrt(dot(y, y));
  if (!(sy > 1e-14 * ss * yy)) return false;
  pairs_.push_back({std::move(s), std::move(y), 1.0 / sy});
  while (static_cast<int>(pairs_.size()) > capacity_) pairs_.pop_front();
  return true;
}

std::vector<double> lbfgs_direction(const LbfgsMemory& memory,
                                    const std::vector<double>& gradient) {
  std::vector<double> q = gradient;
  const auto& pairs = memory.pairs();
  if (pairs.empty()) {
    for (double& v : q) v = -v;
    return q;
  }

  std::vector<double> alpha(pairs.size(), 0.0);
  for (std::size_t idx = pairs.size(); idx-- > 0;) {
    const auto& p = pairs[idx];
    alpha[idx] = p.rho * dot(p.s, q);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] -= alpha[idx] * p.y[i];
  }

  const auto& newest = pairs.back();
  const double gamma = 1.0 / (newest.rho * dot(newest.y, newest.y));
  for (double& v : q) v *= gamma;

  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    const auto& p = pairs[idx];
    const double beta = p.rho * dot(p.y, q);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] += (alpha[idx] - beta) * p.s[i];
  }
  for (double& v : q) v = -v;
  return q;
}

LineSearchResult line_search(const std::function<double(double)>& phi,
                             double phi0, double dphi0,
                             const LineSearchOptions& options) {
  if (!(dphi0 < 0.0))
    throw std::invalid_argument("line_search: not a descent direction");

  LineSearchResult result;
  double alpha = options.trial_step;
  for (int trial = 0; trial < options.max_trials; ++trial) {
    const double value = phi(alpha);
    ++result.evaluations;
    if (std::isfinite(value) &&
        value <= phi0 + options.armijo_c1 * alpha * dphi0) {
      result.success = true;
      result.alpha = alpha;
      result.value = value;
      return result;
    }
    if (!std::isfinite(value)) {
      alpha *= 0.25;
      continue;
    }
    // Minimizer of the quadratic through phi(0), phi'(0), phi(alpha),
    // kept inside [0.1, 0.9] alpha.
    const double curv = (value - phi0 - dphi0 * alpha) / (alpha * alpha);
    double next;
    if (curv > 0.0) {
      next = -dphi0 / (2.0 * curv);
    } else {
      next = 0.5 * alpha;
    }
    next = std::clamp(next, 0.1 * alpha, 0.9 * alpha);
    alpha = next;
  }
  return result;
}

}  // namespace heatshape
