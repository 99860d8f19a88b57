// End-to-end acceptance checks: one PASS/FAIL line per criterion, nonzero
// exit when anything fails. Heavier than the unit suites; expect minutes.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "gimqlap/bench.hpp"
#include "gimqlap/shapeparam.hpp"
#include "gimqlap/specfun.hpp"

using namespace gimq;

namespace {

constexpr const char* kOutDir = "acceptance_out";

double rel(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// shared across criteria so the expensive ladders run once
struct Shared {
  std::vector<RunRow> table1;
  // best constant-eps sweep RMS per size, filled by criterion 6
  double sweep_best[3] = {0.0, 0.0, 0.0};
  bool sweeps_ok = false;
};

Shared shared;

// ---- criterion 1: generic kernel image vs elementary closed forms --------

Outcome criterion1() {
  const double alphas[] = {0.1, 0.4, 0.8, 1.2, 1.6, 2.0};
  // both paths cross zero on this grid (exactly on the generic path,
  // to roundoff on the elementary one), so errors are scale-normalized
  double worst = 0.0;
  for (double alpha : alphas) {
    for (int j = 1; j <= 50; ++j) {
      const double r = 0.1 * j;
      const OperatorSpec one{1, alpha, 1.0, 0.0};
      const double got1 = gimq_fraclap(one, 1.0, r);
      const double want1 = fraclap_gimq_1d_closed(alpha, r);
      worst = std::max(worst,
                       std::abs(got1 - want1) / (1.0 + std::abs(want1)));
      const OperatorSpec three{3, alpha, 1.0, 0.0};
      const double got3 = gimq_fraclap(three, 1.0, r);
      const double want3 = fraclap_gimq_3d_closed(alpha, r);
      worst = std::max(worst,
                       std::abs(got3 - want3) / (1.0 + std::abs(want3)));
    }
  }
  if (worst > 1e-10)
    return {false, "closed-form grid mismatch, worst rel " + fmt(worst)};

  // alpha == 2 must reproduce the classical Laplacian image exactly
  double worst2 = 0.0;
  for (int d : {1, 2})
    for (double eps : {0.5, 1.0, 3.5})
      for (int j = 0; j <= 50; ++j) {
        const double r = 0.1 * j;
        const OperatorSpec spec{d, 2.0, 1.0, 0.0};
        const double got = gimq_fraclap(spec, eps, r);
        const double want = gimq_classical_lap(d, eps, r);
        worst2 = std::max(worst2, std::abs(got - want) / (1.0 + std::abs(want)));
      }
  if (worst2 > 1e-11)
    return {false, "classical-limit mismatch, worst " + fmt(worst2)};

  // alpha -> 0: the constant and series collapse back to the plain kernel
  double worst0 = 0.0;
  for (int d : {1, 2})
    for (double eps : {0.5, 2.0})
      for (int j = 0; j <= 50; ++j) {
        const double r = 0.1 * j;
        const OperatorSpec spec{d, 0.0, 1.0, 0.0};
        const double got =
            spec.c_lemma() * hyp2f1_lemma(d, 0.0, -eps * eps * r * r);
        const double want = gimq_eval(d, eps, r);
        worst0 = std::max(worst0, std::abs(got - want) / (1.0 + std::abs(want)));
      }
  if (worst0 > 1e-11)
    return {false, "order-zero identity mismatch, worst " + fmt(worst0)};

  return {true, "600-point closed-form grid (worst rel " + fmt(worst) +
                    "), classical limit and order-zero identity"};
}

// ---- criteria 2 and 4: polynomial-solution ladder ------------------------

// reference magnitudes for the polynomial-solution ladder
// (alpha, eps) cases {0.6, 3}, {1, 3.5}, {1.5, 3.5}, {2, 3.5}
const double kLadderRms[4][5] = {
    {1.233e-1, 3.608e-3, 2.468e-4, 1.866e-5, 8.655e-8},
    {2.650e-1, 2.616e-2, 4.125e-4, 3.375e-5, 5.891e-8},
    {3.838e-1, 8.189e-2, 8.420e-4, 5.933e-5, 3.355e-7},
    {4.626e-1, 1.980e-1, 2.180e-3, 1.307e-4, 3.513e-7},
};
const double kLadderCond[4][5] = {
    {2.099, 6.542, 2.24e02, 6.24e05, 7.66e12},
    {4.086, 5.808, 4.92e01, 2.25e04, 2.16e10},
    {1.05e01, 1.07e01, 5.34e01, 7.37e03, 5.98e09},
    {2.87e01, 2.84e01, 5.24e01, 2.03e03, 8.47e08},
};

Outcome criterion2() {
  ExperimentConfig base;
  base.out_dir = kOutDir;
  shared.table1 = run_table1(base);
  if (shared.table1.size() != 20)
    return {false, "expected 20 ladder rows, got " +
                       std::to_string(shared.table1.size())};
  double worst_rms_factor = 1.0, worst_cond_factor = 1.0;
  for (int c = 0; c < 4; ++c)
    for (int n = 0; n < 5; ++n) {
      const RunRow& row = shared.table1[c * 5 + n];
      if (row.failed) return {false, "ladder row failed: " + row.message};
      const double fr = std::max(row.rms / kLadderRms[c][n],
                                 kLadderRms[c][n] / row.rms);
      const double fc = std::max(row.cond2 / kLadderCond[c][n],
                                 kLadderCond[c][n] / row.cond2);
      // the largest size is this ill-conditioned on purpose; only the
      // order of magnitude is stable there
      const double rms_cap = n < 4 ? 5.0 : 10.0;
      const double cond_cap = n < 4 ? 3.0 : 10.0;
      if (fr > rms_cap)
        return {false, "rms off by " + fmt(fr) + "x at case " +
                           std::to_string(c) + ", size index " + std::to_string(n)};
      if (fc > cond_cap)
        return {false, "cond2 off by " + fmt(fc) + "x at case " +
                           std::to_string(c) + ", size index " + std::to_string(n)};
      worst_rms_factor = std::max(worst_rms_factor, fr);
      worst_cond_factor = std::max(worst_cond_factor, fc);
    }
  return {true, "20 ladder rows within tolerance (worst rms factor " +
                    fmt(worst_rms_factor) + ", cond factor " +
                    fmt(worst_cond_factor) + ")"};
}

Outcome criterion4() {
  if (shared.table1.size() != 20) return {false, "ladder rows unavailable"};
  std::string ratios;
  for (int c = 0; c < 4; ++c) {
    const double r17 = shared.table1[c * 5 + 2].rms;
    const double r33 = shared.table1[c * 5 + 3].rms;
    const double ratio = r17 / r33;
    ratios += (c ? ", " : "") + fmt(ratio);
    if (!(ratio >= 5.0))
      return {false, "refinement gain only " + fmt(ratio) + "x at case " +
                         std::to_string(c)};
  }
  return {true, "halving the spacing gains " + ratios + " in accuracy"};
}

// ---- criterion 3: nonzero exterior data ladder ----------------------------

Outcome criterion3() {
  ExperimentConfig base;
  base.out_dir = kOutDir;
  const std::vector<RunRow> rows = run_table2(base);
  if (rows.size() < 2) return {false, "ladder too short"};
  const double want[2] = {3.506e-3, 3.248e-4};
  for (int n = 0; n < 2; ++n) {
    if (rows[n].failed) return {false, "row failed: " + rows[n].message};
    const double f = std::max(rows[n].rms / want[n], want[n] / rows[n].rms);
    if (f > 5.0)
      return {false, "rms off by " + fmt(f) + "x at size index " +
                         std::to_string(n)};
  }
  return {true, "rms " + fmt(rows[0].rms) + " and " + fmt(rows[1].rms) +
                    " against references 3.506e-3 and 3.248e-4"};
}

// ---- criterion 5: 2D elliptic convergence with random shape --------------

Outcome criterion5() {
  ExperimentConfig cfg;
  cfg.benchmark = "elliptic_lshape";
  cfg.alpha = 2.0;
  cfg.shape = ShapeKind::RandomPerturbed;
  cfg.eps_min = 0.1;
  cfg.eps_max = 4.0;
  cfg.seed = 1;
  cfg.n_bars = {21, 65, 133};
  cfg.out_dir = kOutDir;
  const std::vector<RunRow> rows = run_steady(cfg, "lshape_ladder.csv");
  if (rows.size() != 3) return {false, "expected 3 rows"};
  std::string seq;
  for (const RunRow& row : rows) {
    if (row.failed) return {false, "row failed: " + row.message};
    seq += (seq.empty() ? "" : " -> ") + fmt(row.rms);
  }
  if (!(rows[1].rms < rows[0].rms && rows[2].rms < rows[1].rms))
    return {false, "rms not monotone: " + seq};
  if (!(rows[2].rms <= 1e-3))
    return {false, "final rms " + fmt(rows[2].rms) + " above 1e-3"};
  return {true, "rms " + seq + ", final below 1e-3"};
}

// ---- criteria 6 and 7: shape-parameter behaviour --------------------------

Outcome criterion6() {
  const int sizes[3] = {33, 65, 129};
  int min_index33 = -1;
  int count33 = 0;
  for (int s = 0; s < 3; ++s) {
    ExperimentConfig cfg;
    cfg.benchmark = "poisson1d_hom";
    cfg.alpha = 0.6;
    cfg.n_bars = {sizes[s]};
    cfg.out_dir = kOutDir;
    const std::vector<RunRow> rows = run_sweep_eps(cfg);
    double best = 0.0;
    int best_i = -1;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].failed) continue;
      if (best_i < 0 || rows[i].rms < best) {
        best = rows[i].rms;
        best_i = static_cast<int>(i);
      }
    }
    if (best_i < 0) return {false, "sweep produced no usable rows"};
    shared.sweep_best[s] = best;
    if (sizes[s] == 33) {
      min_index33 = best_i;
      count33 = static_cast<int>(rows.size());
    }
  }
  shared.sweeps_ok = true;
  if (min_index33 <= 0 || min_index33 >= count33 - 1)
    return {false, "minimum sits at a sweep endpoint (index " +
                       std::to_string(min_index33) + ")"};
  const double eps_star = 0.5 + 0.25 * min_index33;
  return {true, "error minimized at interior eps " + fmt(eps_star) +
                    " with rms " + fmt(shared.sweep_best[0])};
}

Outcome criterion7() {
  if (!shared.sweeps_ok) return {false, "sweep results unavailable"};
  const int sizes[3] = {33, 65, 129};
  std::string summary;
  for (int s = 0; s < 3; ++s) {
    ExperimentConfig cfg;
    cfg.benchmark = "poisson1d_hom";
    cfg.alpha = 0.6;
    cfg.shape = ShapeKind::CondIndicated;
    cfg.n_bars = {sizes[s]};
    cfg.out_dir = kOutDir;
    const std::vector<RunRow> rows = run_steady(cfg, "cond_indicated.csv");
    if (rows.size() != 1 || rows[0].failed)
      return {false, "search failed at size " + std::to_string(sizes[s]) +
                         (rows.empty() ? "" : ": " + rows[0].message)};
    const RunRow& row = rows[0];
    if (!(row.cond2 >= 1e13 && row.cond2 <= 1e16))
      return {false, "cond2 " + fmt(row.cond2) + " outside [1e13, 1e16] at size " +
                         std::to_string(sizes[s])};
    const double factor = row.rms / shared.sweep_best[s];
    if (!(factor <= 10.0))
      return {false, "rms " + fmt(factor) + "x worse than the sweep best at size " +
                         std::to_string(sizes[s])};
    summary += (s ? "; " : "") + std::to_string(sizes[s]) + ": " + row.eps_desc +
               ", cond " + fmt(row.cond2) + ", " + fmt(factor) + "x best";
  }
  return {true, summary};
}

// ---- criterion 8: evolution problems, qualitative -------------------------

Outcome criterion8() {
  // (a) free decay through the operator: norm non-increasing, faster for
  // larger order
  double finals[3] = {0, 0, 0};
  const double alphas[3] = {0.4, 1.3, 2.0};
  for (int i = 0; i < 3; ++i) {
    ExperimentConfig cfg;
    cfg.benchmark = "diffusion_hole";
    cfg.alpha = alphas[i];
    cfg.n_bars = {280};
    cfg.shape = ShapeKind::RandomPerturbed;
    cfg.eps_min = 1.0;
    cfg.eps_max = 5.0;
    cfg.seed = 1;
    cfg.tau = 0.005;
    cfg.t_end = 3.0;
    cfg.out_dir = kOutDir;
    const DiffusionResult res = run_diffusion(cfg);
    if (res.failed) return {false, "evolution failed: " + res.message};
    for (size_t n = 1; n < res.series.size(); ++n)
      if (res.series[n].norm2 > res.series[n - 1].norm2 + 1e-14)
        return {false, "norm grew at level " + std::to_string(n) +
                           " for order " + fmt(alphas[i])};
    finals[i] = res.series.back().norm2;
  }
  if (!(finals[0] > finals[1] && finals[1] > finals[2]))
    return {false, "final norms not ordered by operator order: " +
                       fmt(finals[0]) + ", " + fmt(finals[1]) + ", " +
                       fmt(finals[2])};

  // (b) data supported away from the domain: invisible classically, felt
  // through the nonlocal operator
  double peak14 = 0.0, peak2 = 0.0;
  for (double alpha : {2.0, 1.4}) {
    ExperimentConfig cfg;
    cfg.benchmark = "heat_stripe";
    cfg.alpha = alpha;
    cfg.x_c = 1.3;
    cfg.n_bars = {289};
    cfg.shape = ShapeKind::RandomPerturbed;
    cfg.eps_min = 1.0;
    cfg.eps_max = 5.0;
    cfg.seed = 1;
    cfg.tau = 0.01;
    cfg.t_end = alpha == 2.0 ? 0.6 : 0.4;
    cfg.out_dir = kOutDir;
    const DiffusionResult res = run_diffusion(cfg);
    if (res.failed) return {false, "stripe evolution failed: " + res.message};
    double peak = 0.0;
    for (const DiffusionRow& row : res.series) peak = std::max(peak, row.max_abs);
    (alpha == 2.0 ? peak2 : peak14) = peak;
  }
  if (!(peak2 <= 1e-8))
    return {false, "classical run leaked " + fmt(peak2) + " from exterior data"};
  if (!(peak14 >= 1e-3))
    return {false, "nonlocal response only " + fmt(peak14) + " by t = 0.4"};
  return {true, "decay ordered " + fmt(finals[0]) + " > " + fmt(finals[1]) +
                    " > " + fmt(finals[2]) + "; stripe peaks " + fmt(peak2) +
                    " (classical) vs " + fmt(peak14) + " (nonlocal)"};
}

// ---- criterion 9: quadrature oracles ---------------------------------------

double simpson_piece(const QuadPiece& piece, const std::function<double(Point)>& f,
                     double trunc, int n) {
  auto clamp = [trunc](double v) {
    if (std::isinf(v)) return v > 0 ? trunc : -trunc;
    return v;
  };
  const double ax = clamp(piece.lo[0]), bx = clamp(piece.hi[0]);
  const double ay = clamp(piece.lo[1]), by = clamp(piece.hi[1]);
  const double hx = (bx - ax) / n, hy = (by - ay) / n;
  double acc = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double wy = (j == 0 || j == n) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
    const double y = ay + j * hy;
    double row = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double wx = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      row += wx * f(Point{ax + i * hx, y});
    }
    acc += wy * row;
  }
  return acc * hx * hy / 9.0;
}

Outcome criterion9() {
  // 1D closed form: 2 int_1^inf (1+y^2)^{-1} y^{-2} dy = 2 (1 - pi/4)
  const Domain interval = Domain::interval(-1.0, 1.0);
  const OperatorSpec spec1{1, 1.0, 1.0, 0.0};
  const double got1 = kernel_tail_integral(interval, {0, 0}, {0, 0}, 1.0, spec1,
                                           QuadConfig::defaults(1));
  const double want1 = 2.0 * (1.0 - kPi / 4.0);
  if (rel(got1, want1) > 1e-9)
    return {false, "1D tail off by rel " + fmt(rel(got1, want1))};

  // 2D kernel tail on the punctured square vs a dense Simpson oracle
  const Domain hole =
      Domain::rectangle_with_hole({-2, -2}, {2, 2}, {0.5, 0.5}, {1.5, 1.5});
  const OperatorSpec spec2{2, 1.3, 1.0, 0.0};
  const Point xk{-1.0, -0.5}, xi{0.0, 0.0};
  const double eps = 2.0;
  const double got2 =
      kernel_tail_integral(hole, xk, xi, eps, spec2, QuadConfig::defaults(2));
  auto tail_integrand = [&](Point y) {
    const double ri = distance(y, xi, 2), rk = distance(y, xk, 2);
    return std::pow(1.0 + eps * eps * ri * ri, -1.5) *
           std::pow(rk, -(2.0 + spec2.alpha));
  };
  double oracle2 = 0.0;
  for (const auto& piece : hole.complement_decomposition())
    oracle2 += simpson_piece(piece, tail_integrand, 42.0, 1500);
  if (rel(got2, oracle2) > 1e-6)
    return {false, "2D tail off by rel " + fmt(rel(got2, oracle2))};

  // 2D data integral over a compactly supported stripe vs the same oracle
  const Domain rect = Domain::rectangle({-1, -1}, {1, 1});
  const OperatorSpec spec3{2, 1.4, 1.0, 0.0};
  const double x_c = 1.3;
  auto g = [x_c](Point p, double) {
    if (p.x < x_c || p.x > x_c + 0.25 || p.y < -1.0 || p.y > 1.0) return 0.0;
    return std::sin(kPi * (p.x - x_c + 0.5)) * std::sin(kPi * (p.y + 1.0) / 2.0);
  };
  const Point xq{0.75, 0.25};
  const double got3 =
      boundary_data_integral(rect, xq, g, 0.0, spec3, QuadConfig::defaults(2));
  QuadPiece support;
  support.dim = 2;
  support.lo[0] = x_c;
  support.hi[0] = x_c + 0.25;
  support.lo[1] = -1.0;
  support.hi[1] = 1.0;
  auto data_integrand = [&](Point y) {
    return g(y, 0.0) * std::pow(distance(y, xq, 2), -(2.0 + spec3.alpha));
  };
  const double oracle3 = simpson_piece(support, data_integrand, 0.0, 2000);
  if (rel(got3, oracle3) > 1e-6)
    return {false, "2D data integral off by rel " + fmt(rel(got3, oracle3))};

  return {true, "1D closed form to 1e-9; two 2D integrals match Simpson oracles (rel " +
                    fmt(rel(got2, oracle2)) + ", " + fmt(rel(got3, oracle3)) + ")"};
}

}  // namespace

int main() {
  struct Entry {
    int number;
    Outcome (*fn)();
    double time_limit;  // seconds, 0 = unenforced
  };
  const Entry entries[] = {
      {1, criterion1, 5.0},   {2, criterion2, 120.0}, {3, criterion3, 120.0},
      {4, criterion4, 0.0},   {5, criterion5, 300.0}, {6, criterion6, 0.0},
      {7, criterion7, 0.0},   {8, criterion8, 600.0}, {9, criterion9, 0.0},
  };
  int failures = 0;
  for (const Entry& e : entries) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = e.fn();
    } catch (const std::exception& err) {
      out = {false, std::string("exception: ") + err.what()};
    }
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (out.pass && e.time_limit > 0.0 && dt > e.time_limit) {
      out.pass = false;
      out.detail += " [time limit " + fmt(e.time_limit) + "s exceeded]";
    }
    std::printf("%s criterion %d: %s (%.1fs)\n", out.pass ? "PASS" : "FAIL",
                e.number, out.detail.c_str(), dt);
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  std::printf("%d/9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
