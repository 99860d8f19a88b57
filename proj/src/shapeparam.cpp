#include "gimqlap/shapeparam.hpp"

#include <stdexcept>

#include "gimqlap/errors.hpp"
#include "gimqlap/solver.hpp"

namespace gimq {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

// xoshiro256** (Blackman & Vigna), state seeded through splitmix64 so any
// 64-bit seed, including 0, yields a well-mixed state.
UniformStream::UniformStream(std::uint64_t seed) {
  for (auto& word : s_) word = splitmix64(seed);
}

double UniformStream::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  // 53-bit mantissa, offset half a ulp: values lie strictly inside (0, 1)
  return (static_cast<double>(result >> 11) + 0.5) * 0x1.0p-53;
}

PointSet assign_constant(PointSet points, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("assign_constant: eps must be positive");
  points.shape.assign(points.pts.size(), eps);
  return points;
}

double perturbed_eps(double eps_min, double eps_max, double delta) {
  return eps_min + delta * (eps_max - eps_min);
}

PointSet assign_random_perturbed(PointSet points, double eps_min, double eps_max,
                                 std::uint64_t seed) {
  if (!(eps_min > 0.0 && eps_min < eps_max))
    throw std::invalid_argument("assign_random_perturbed: need 0 < eps_min < eps_max");
  UniformStream stream(seed);
  points.shape.resize(points.pts.size());
  for (auto& eps : points.shape) eps = perturbed_eps(eps_min, eps_max, stream.next());
  return points;
}

CondSearchResult search_cond_indicated(
    const std::function<Eigen::MatrixXd(double)>& assemble,
    const CondIndicated& strategy) {
  if (!(strategy.eps_start > 0.0 && strategy.eps_step > 0.0))
    throw std::invalid_argument("search_cond_indicated: grid must be positive");
  if (!(strategy.k_lo < strategy.k_hi))
    throw std::invalid_argument("search_cond_indicated: need k_lo < k_hi");
  CondSearchResult result;
  for (int iter = 0; iter < strategy.max_iters; ++iter) {
    const double eps = strategy.eps_start + iter * strategy.eps_step;
    const double cond = condition_number_2(assemble(eps));
    result.trace.emplace_back(eps, cond);
    if (cond >= strategy.k_lo && cond <= strategy.k_hi) {
      result.eps = eps;
      result.cond2 = cond;
      return result;
    }
  }
  throw ShapeSearchError(
      "search_cond_indicated: no scanned shape parameter reached the conditioning window",
      result.trace);
}

}  // namespace gimq
