#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "gimqlap/geometry.hpp"

namespace gimq {

/// Search parameters for the condition-number-indicated shape parameter.
struct CondIndicated {
  double eps_start = 0.5;
  double eps_step = 0.25;
  double k_lo = 1e13;
  double k_hi = 1e16;
  int max_iters = 100;
};

struct CondSearchResult {
  double eps = 0.0;
  double cond2 = 0.0;
  std::vector<std::pair<double, double>> trace;  // scanned (eps, cond2)
};

/// Every center gets the same shape parameter.
PointSet assign_constant(PointSet points, double eps);

/// Per-center parameters eps_min + delta_i (eps_max - eps_min) with delta_i
/// uniform on (0, 1), drawn in point order from a fully specified generator
/// (splitmix64-seeded xoshiro256**), so a seed reproduces the set exactly.
PointSet assign_random_perturbed(PointSet points, double eps_min, double eps_max,
                                 std::uint64_t seed);

/// The i-th perturbed value given its uniform draw; exposed so tests can pin
/// the affine map independently of the generator.
double perturbed_eps(double eps_min, double eps_max, double delta);

/// Scans eps upward from eps_start in eps_step increments until the 2-norm
/// condition number of assemble(eps) falls inside [k_lo, k_hi]; returns the
/// first such eps with its condition number and the scan trace. Throws
/// ShapeSearchError (carrying the trace) when the scan is exhausted.
CondSearchResult search_cond_indicated(
    const std::function<Eigen::MatrixXd(double)>& assemble, const CondIndicated& strategy);

/// The uniform (0, 1) stream behind assign_random_perturbed.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed);
  double next();

 private:
  std::uint64_t s_[4];
};

}  // namespace gimq
