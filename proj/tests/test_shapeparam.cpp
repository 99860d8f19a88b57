#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "gimqlap/errors.hpp"
#include "gimqlap/shapeparam.hpp"
#include "testutil.hpp"

using namespace gimq;
using testutil::rel_err;

TEST_CASE("constant assignment stamps every center") {
  PointSet ps = assign_constant(uniform_points(Domain::interval(-1.0, 1.0), 9), 2.5);
  REQUIRE(ps.has_shape());
  REQUIRE(ps.shape.size() == static_cast<size_t>(ps.n_bar()));
  for (double e : ps.shape) CHECK(e == 2.5);
  CHECK_THROWS_AS(assign_constant(ps, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(assign_constant(ps, -1.0), std::invalid_argument);
}

TEST_CASE("perturbed map hits the interval endpoints") {
  CHECK(perturbed_eps(1.0, 5.0, 0.0) == 1.0);
  CHECK(perturbed_eps(1.0, 5.0, 1.0) == 5.0);
  CHECK(perturbed_eps(1.0, 5.0, 0.5) == 3.0);
  CHECK(perturbed_eps(0.1, 4.0, 0.25) == doctest::Approx(0.1 + 0.25 * 3.9));
}

TEST_CASE("uniform stream stays strictly inside (0,1)") {
  UniformStream stream(12345);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double u = stream.next();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo < 0.01);  // the stream actually explores the interval
  CHECK(hi > 0.99);
}

TEST_CASE("random assignment is seeded and bounded") {
  const PointSet base = uniform_points(Domain::interval(-1.0, 1.0), 65);
  const PointSet a = assign_random_perturbed(base, 1.0, 5.0, 42);
  const PointSet b = assign_random_perturbed(base, 1.0, 5.0, 42);
  const PointSet c = assign_random_perturbed(base, 1.0, 5.0, 43);
  REQUIRE(a.has_shape());
  CHECK(a.shape == b.shape);  // same seed, identical draw
  CHECK(a.shape != c.shape);
  for (double e : a.shape) {
    CHECK(e > 1.0);
    CHECK(e < 5.0);
  }
  CHECK_THROWS_AS(assign_random_perturbed(base, 5.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("random draws have the right mean") {
  // 10^4 draws on (1,5): mean 3, sd 4/sqrt(12); demand mean within 3 SE
  UniformStream stream(2026);
  const int n = 10000;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += perturbed_eps(1.0, 5.0, stream.next());
  const double mean = acc / n;
  const double se = (4.0 / std::sqrt(12.0)) / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(mean - 3.0) < 3.0 * se);
}

TEST_CASE("condition-indicated search lands in the window") {
  // synthetic assembly: cond(diag(1, eps^4 * 1e-18)) = 1e18 / eps^4, which
  // drops below 1e16 between the grid points 3.0 and 3.25
  auto assemble = [](double eps) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = std::pow(eps, 4.0) * 1e-18;
    return m;
  };
  CondIndicated strategy;
  const CondSearchResult res = search_cond_indicated(assemble, strategy);
  CHECK(res.eps == 3.25);
  CHECK(rel_err(res.cond2, 1e18 / std::pow(3.25, 4.0)) < 1e-12);
  // the trace records every scanned eps from the start
  REQUIRE(res.trace.size() == 12);
  CHECK(res.trace.front().first == 0.5);
  CHECK(res.trace.back().first == 3.25);
  for (size_t i = 1; i < res.trace.size(); ++i)
    CHECK(res.trace[i].first == doctest::Approx(res.trace[i - 1].first + 0.25));
}

TEST_CASE("search returns the first admissible grid point") {
  auto assemble = [](double) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = 1e-14;  // cond 1e14 for every eps
    return m;
  };
  const CondSearchResult res = search_cond_indicated(assemble, CondIndicated{});
  CHECK(res.eps == 0.5);
  CHECK(res.trace.size() == 1);
}

TEST_CASE("exhausted search throws with its trace attached") {
  auto assemble = [](double) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = 1e-20;  // cond 1e20, never admissible
    return m;
  };
  CondIndicated strategy;
  strategy.max_iters = 25;
  try {
    search_cond_indicated(assemble, strategy);
    FAIL("expected ShapeSearchError");
  } catch (const ShapeSearchError& err) {
    CHECK(err.trace.size() == 25);
    CHECK(err.trace.front().first == 0.5);
    CHECK(err.trace.back().first == doctest::Approx(0.5 + 24 * 0.25));
    for (const auto& [eps, cond] : err.trace) {
      CHECK(eps > 0.0);
      CHECK(cond > 1e16);
    }
  }
}
