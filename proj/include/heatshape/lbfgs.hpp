#pragma once

#include <deque>
#include <functional>
#include <vector>

namespace heatshape {

/// Bounded store of (s, y) update pairs for the limited-memory inverse
/// BFGS rule.  Pairs violating the curvature condition <s,y> > 0 are
/// skipped on insertion, which keeps the implicit Hessian positive
/// definite without damping.
class LbfgsMemory {
 public:
  explicit LbfgsMemory(int capacity) : capacity_(capacity) {}

  /// Returns false when the pair was rejected.
  bool push(std::vector<double> s, std::vector<double> y);
  void clear() { pairs_.clear(); }
  int size() const { return static_cast<int>(pairs_.size()); }

  struct Pair {
    std::vector<double> s, y;
    double rho;  ///< 1 / <s, y>
  };
  const std::deque<Pair>& pairs() const { return pairs_; }

 private:
  int capacity_;
  std::deque<Pair> pairs_;
};

/// Two-loop recursion with <s,y>/<y,y> initial scaling from the newest
/// pair; with empty memory returns -gradient.
std::vector<double> lbfgs_direction(const LbfgsMemory& memory,
                                    const std::vector<double>& gradient);

struct LineSearchOptions {
  double armijo_c1 = 1e-4;
  double trial_step = 1.0;
  int max_trials = 20;
};

struct LineSearchResult {
  bool success = false;
  double alpha = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Second-order line search: quadratic model through phi(0), phi'(0) and
/// the trial value, backtracking until the Armijo condition holds.
/// Infinite trial values (geometry faults) shrink the step directly.
LineSearchResult line_search(const std::function<double(double)>& phi,
                             double phi0, double dphi0,
                             const LineSearchOptions& options = {});

}  // namespace heatshape
