#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gimq {

// Series evaluation hit the iteration cap without meeting the termination
// tolerance. Raised instead of silently returning a partial sum.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Adaptive quadrature exhausted its subdivision budget (or detected a
// diverging value). Carries the best estimate and its error bound.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double best_estimate, double error_bound)
      : std::runtime_error(what), best_estimate(best_estimate), error_bound(error_bound) {}
  double best_estimate;
  double error_bound;
};

// Linear system is singular to working precision.
class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(const std::string& what, double cond_estimate)
      : std::runtime_error(what), cond_estimate(cond_estimate) {}
  double cond_estimate;
};

// Condition-indicated shape search exhausted its grid without landing in the
// target window. Carries the scanned (epsilon, cond2) trace.
class ShapeSearchError : public std::runtime_error {
 public:
  ShapeSearchError(const std::string& what, std::vector<std::pair<double, double>> trace)
      : std::runtime_error(what), trace(std::move(trace)) {}
  std::vector<std::pair<double, double>> trace;
};

}  // namespace gimq
