#include "gimqlap/extquad.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "gimqlap/errors.hpp"

namespace gimq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDivergenceGuard = 1e12;
constexpr double kPiSeg = 3.14159265358979323846;

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1] (positive half).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Rule15 {
  double node[15];
  double wk[15];
  double wg[15];  // zero on pure-Kronrod slots
};

Rule15 make_rule() {
  Rule15 r{};
  for (int j = 0; j < 7; ++j) {
    r.node[j] = -kXgk[j];
    r.node[14 - j] = kXgk[j];
    r.wk[j] = r.wk[14 - j] = kWgk[j];
    if (j % 2 == 1) r.wg[j] = r.wg[14 - j] = kWg[(j - 1) / 2];
  }
  r.node[7] = 0.0;
  r.wk[7] = kWgk[7];
  r.wg[7] = kWg[3];
  return r;
}

const Rule15& rule() {
  static const Rule15 r = make_rule();
  return r;
}

// QUADPACK-style error inflation: guards against deceptively small raw
// Gauss/Kronrod differences on peaked integrands.
double inflate_error(double raw, double asc) {
  if (asc > 0.0 && raw > 0.0)
    return asc * std::min(1.0, std::pow(200.0 * raw / asc, 1.5));
  return raw;
}

// One axis of the piece mapped onto s in [0, 1] (rays onto (0, 1]).
struct AxisMap {
  enum Kind { Finite, RayUp, RayDown } kind = Finite;
  double a = 0.0, b = 1.0;  // finite bounds, or the ray origin in `a`

  static AxisMap make(double lo, double hi) {
    AxisMap m;
    if (std::isinf(lo) && std::isinf(hi))
      throw std::invalid_argument("quadrature piece has a doubly infinite axis");
    if (std::isinf(hi)) {
      m.kind = RayUp;
      m.a = lo;
    } else if (std::isinf(lo)) {
      m.kind = RayDown;
      m.a = hi;
    } else {
      m.kind = Finite;
      m.a = lo;
      m.b = hi;
    }
    return m;
  }

  double point(double s) const {
    switch (kind) {
      case Finite:
        return a + s * (b - a);
      case RayUp:
        return a + (1.0 - s) / s;
      case RayDown:
        return a - (1.0 - s) / s;
    }
    return 0.0;
  }

  double jacobian(double s) const {
    if (kind == Finite) return b - a;
    return 1.0 / (s * s);
  }

  // Parameter of the point on the axis closest to coordinate t.
  double project(double t) const {
    switch (kind) {
      case Finite: {
        const double s = (t - a) / (b - a);
        return std::clamp(s, 0.0, 1.0);
      }
      case RayUp:
        return t <= a ? 1.0 : 1.0 / (1.0 + (t - a));
      case RayDown:
        return t >= a ? 1.0 : 1.0 / (1.0 + (a - t));
    }
    return 0.0;
  }
};

// Breakpoints in s-space, geometrically clustered (ratio 2, five levels)
// toward the anchor parameter; {0, 1} when no anchor.
std::vector<double> axis_breaks(const std::optional<double>& anchor) {
  std::vector<double> b{0.0, 1.0};
  if (anchor) {
    const double s = *anchor;
    if (s > 0.0 && s < 1.0) b.push_back(s);
    for (int j = 1; j <= 5; ++j) {
      const double step = std::ldexp(1.0, -j);
      const double left = s - s * step;
      const double right = s + (1.0 - s) * step;
      if (left > 0.0 && left < 1.0) b.push_back(left);
      if (right > 0.0 && right < 1.0) b.push_back(right);
    }
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end(),
                        [](double x, double y) { return std::abs(x - y) < 1e-12; }),
            b.end());
  }
  return b;
}

struct Cell {
  double val = 0.0;
  double err = 0.0;
  double raw_x = 0.0, raw_y = 0.0;
  double ax = 0.0, bx = 1.0, ay = 0.0, by = 1.0;
};

struct CellWorse {
  bool operator()(const Cell& lhs, const Cell& rhs) const { return lhs.err < rhs.err; }
};

// F maps s-space coordinates to the transformed integrand value.
template <typename F>
Cell eval_cell_1d(const F& f, double a, double b) {
  const Rule15& r = rule();
  const double c = 0.5 * (a + b), hl = 0.5 * (b - a);
  double fv[15];
  double resk = 0.0, resg = 0.0;
  for (int j = 0; j < 15; ++j) {
    fv[j] = f(c + hl * r.node[j]);
    resk += r.wk[j] * fv[j];
    resg += r.wg[j] * fv[j];
  }
  const double mean = 0.5 * resk;
  double asc = 0.0;
  for (int j = 0; j < 15; ++j) asc += r.wk[j] * std::abs(fv[j] - mean);
  Cell cell;
  cell.ax = a;
  cell.bx = b;
  cell.val = resk * hl;
  cell.raw_x = std::abs(resk - resg) * hl;
  cell.err = inflate_error(cell.raw_x, asc * hl);
  return cell;
}

template <typename F>
Cell eval_cell_2d(const F& f, double ax, double bx, double ay, double by) {
  const Rule15& r = rule();
  const double cx = 0.5 * (ax + bx), hlx = 0.5 * (bx - ax);
  const double cy = 0.5 * (ay + by), hly = 0.5 * (by - ay);
  double fv[15][15];
  for (int i = 0; i < 15; ++i)
    for (int j = 0; j < 15; ++j)
      fv[i][j] = f(cx + hlx * r.node[i], cy + hly * r.node[j]);
  double kk = 0.0, gk = 0.0, kg = 0.0;
  for (int i = 0; i < 15; ++i) {
    double row_k = 0.0;
    for (int j = 0; j < 15; ++j) row_k += r.wk[j] * fv[i][j];
    double row_g = 0.0;
    for (int j = 0; j < 15; ++j) row_g += r.wg[j] * fv[i][j];
    kk += r.wk[i] * row_k;
    kg += r.wk[i] * row_g;
    gk += r.wg[i] * row_k;
  }
  const double mean = 0.25 * kk;
  double asc = 0.0;
  for (int i = 0; i < 15; ++i)
    for (int j = 0; j < 15; ++j) asc += r.wk[i] * r.wk[j] * std::abs(fv[i][j] - mean);
  const double area = hlx * hly;
  Cell cell;
  cell.ax = ax;
  cell.bx = bx;
  cell.ay = ay;
  cell.by = by;
  cell.val = kk * area;
  cell.raw_x = std::abs(kk - gk) * area;
  cell.raw_y = std::abs(kk - kg) * area;
  cell.err = inflate_error(cell.raw_x, asc * area) + inflate_error(cell.raw_y, asc * area);
  return cell;
}

template <typename EvalCell, typename Split>
double refine(std::vector<Cell> initial, const QuadConfig& cfg, const EvalCell& eval,
              const Split& split) {
  std::priority_queue<Cell, std::vector<Cell>, CellWorse> heap;
  double total = 0.0, err = 0.0;
  for (const Cell& c : initial) {
    total += c.val;
    err += c.err;
    heap.push(c);
  }
  int splits = 0;
  while (true) {
    if (!std::isfinite(total) || !std::isfinite(err))
      throw QuadratureError("exterior quadrature produced a non-finite value", total, err);
    if (std::abs(total) > kDivergenceGuard)
      throw QuadratureError("exterior quadrature appears divergent", total, err);
    if (err <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total))) return total;
    if (splits >= cfg.max_subdivisions || heap.empty())
      throw QuadratureError("exterior quadrature did not converge within budget", total,
                            err);
    Cell worst = heap.top();
    heap.pop();
    total -= worst.val;
    err -= worst.err;
    Cell c1, c2;
    split(worst, c1, c2, eval);
    total += c1.val + c2.val;
    err += c1.err + c2.err;
    heap.push(c1);
    heap.push(c2);
    ++splits;
  }
}

double run_1d(const std::function<double(double)>& fs, const std::vector<double>& breaks,
              const QuadConfig& cfg) {
  std::vector<Cell> cells;
  for (size_t i = 0; i + 1 < breaks.size(); ++i)
    cells.push_back(eval_cell_1d(fs, breaks[i], breaks[i + 1]));
  auto eval = [&fs](double a, double b) { return eval_cell_1d(fs, a, b); };
  auto split = [](const Cell& c, Cell& c1, Cell& c2, const auto& ev) {
    const double mid = 0.5 * (c.ax + c.bx);
    c1 = ev(c.ax, mid);
    c2 = ev(mid, c.bx);
  };
  return refine(std::move(cells), cfg, eval, split);
}

double run_2d(const std::function<double(double, double)>& fs,
              const std::vector<double>& bx, const std::vector<double>& by,
              const QuadConfig& cfg) {
  std::vector<Cell> cells;
  for (size_t i = 0; i + 1 < bx.size(); ++i)
    for (size_t j = 0; j + 1 < by.size(); ++j)
      cells.push_back(eval_cell_2d(fs, bx[i], bx[i + 1], by[j], by[j + 1]));
  auto eval = [&fs](double ax, double bxx, double ay, double byy) {
    return eval_cell_2d(fs, ax, bxx, ay, byy);
  };
  auto split = [](const Cell& c, Cell& c1, Cell& c2, const auto& ev) {
    if (c.raw_x >= c.raw_y) {
      const double mid = 0.5 * (c.ax + c.bx);
      c1 = ev(c.ax, mid, c.ay, c.by);
      c2 = ev(mid, c.bx, c.ay, c.by);
    } else {
      const double mid = 0.5 * (c.ay + c.by);
      c1 = ev(c.ax, c.bx, c.ay, mid);
      c2 = ev(c.ax, c.bx, mid, c.by);
    }
  };
  return refine(std::move(cells), cfg, eval, split);
}

// Iterated Aitken delta-squared extrapolation of a sequence of partial sums.
// Returns the apex of the triangular table and a crude error estimate from
// the last two accelerated columns.
std::pair<double, double> aitken_limit(std::vector<double> s) {
  double prev = s.back();
  while (s.size() >= 3) {
    std::vector<double> nxt;
    nxt.reserve(s.size() - 2);
    for (size_t i = 0; i + 2 < s.size(); ++i) {
      const double d2 = s[i + 2] - 2.0 * s[i + 1] + s[i];
      if (std::abs(d2) < 1e-300)
        nxt.push_back(s[i + 2]);
      else
        nxt.push_back(s[i + 2] - (s[i + 2] - s[i + 1]) * (s[i + 2] - s[i + 1]) / d2);
    }
    prev = s.back();
    s = std::move(nxt);
  }
  return {s.back(), std::abs(s.back() - prev)};
}

// Rescue path for 1D infinite rays whose integrand oscillates too fast in
// s-space for the mapped engine (e.g. boundary data ~ sin(y)/y): adaptive
// finite head, then fixed pi-length tail segments summed under Aitken
// acceleration, which handles both alternating and monotone tails.
double oscillatory_ray_integral(const QuadPiece& piece,
                                const std::function<double(Point)>& f,
                                const QuadConfig& cfg, const Point* near) {
  const bool up = std::isinf(piece.hi[0]);
  const double c = up ? piece.lo[0] : piece.hi[0];
  const double sign = up ? 1.0 : -1.0;
  auto on_ray = [&](double u) { return f(Point{c + sign * u, 0.0}); };

  const double head_len = 8.0 * kPiSeg;
  QuadPiece head;
  head.dim = 1;
  head.lo[0] = 0.0;
  head.hi[0] = head_len;
  Point anchor{near ? sign * (near->x - c) : 0.0, 0.0};
  const double head_val =
      integrate_piece(head, [&](Point p) { return on_ray(p.x); }, cfg,
                      near ? &anchor : nullptr);

  std::vector<double> partial;
  double run = 0.0;
  double limit = head_val, bound = kInf;
  double prev_mag = kInf;
  int grow_streak = 0;
  for (int m = 0; m < 512; ++m) {
    const double a = head_len + m * kPiSeg;
    const Cell seg = eval_cell_1d(on_ray, a, a + kPiSeg);
    // segment magnitudes must eventually decay (the kernel factor forces
    // that for any integrable data); sustained growth means divergence and
    // would otherwise be masked by Aitken finding the series antilimit
    const double mag = std::abs(seg.val);
    grow_streak = (mag > prev_mag && mag > cfg.abs_tol) ? grow_streak + 1 : 0;
    prev_mag = mag;
    if (grow_streak >= 6)
      throw QuadratureError("ray tail grows without bound, integral appears divergent",
                            run, mag);
    run += seg.val;
    partial.push_back(run);
    if (partial.size() < 8 || partial.size() % 8 != 0) continue;
    auto [tail, est] = aitken_limit(partial);
    limit = head_val + tail;
    bound = est;
    if (std::isfinite(limit) &&
        est <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(limit)))
      return limit;
  }
  throw QuadratureError("oscillatory ray quadrature did not stabilize", limit, bound);
}

std::atomic<long> g_exterior_calls{0};

// Intersection of the piece with an axis-aligned box; nullopt when empty.
std::optional<QuadPiece> clip_piece(const QuadPiece& piece, const Box& box) {
  QuadPiece out = piece;
  for (int ax = 0; ax < piece.dim; ++ax) {
    out.lo[ax] = std::max(piece.lo[ax], box.lo[ax]);
    out.hi[ax] = std::min(piece.hi[ax], box.hi[ax]);
    if (!(out.lo[ax] < out.hi[ax])) return std::nullopt;
  }
  return out;
}

}  // namespace

double integrate_piece(const QuadPiece& piece, const std::function<double(Point)>& f,
                       const QuadConfig& cfg, const Point* near) {
  const AxisMap mx = AxisMap::make(piece.lo[0], piece.hi[0]);
  if (piece.dim == 1) {
    std::optional<double> anchor;
    if (near) anchor = mx.project(near->x);
    auto fs = [&](double s) { return f(Point{mx.point(s), 0.0}) * mx.jacobian(s); };
    return run_1d(fs, axis_breaks(anchor), cfg);
  }
  const AxisMap my = AxisMap::make(piece.lo[1], piece.hi[1]);
  std::optional<double> anchor_x, anchor_y;
  if (near) {
    anchor_x = mx.project(near->x);
    anchor_y = my.project(near->y);
  }
  auto fs = [&](double sx, double sy) {
    return f(Point{mx.point(sx), my.point(sy)}) * mx.jacobian(sx) * my.jacobian(sy);
  };
  return run_2d(fs, axis_breaks(anchor_x), axis_breaks(anchor_y), cfg);
}

double integrate_interval(const std::function<double(double)>& f, double a, double b,
                          const QuadConfig& cfg) {
  QuadPiece piece;
  piece.dim = 1;
  piece.lo[0] = a;
  piece.hi[0] = b;
  return integrate_piece(piece, [&f](Point p) { return f(p.x); }, cfg);
}

double kernel_tail_integral(const Domain& domain, Point xk, Point xi, double eps_i,
                            const OperatorSpec& spec, const QuadConfig& cfg) {
  g_exterior_calls.fetch_add(1, std::memory_order_relaxed);
  const int d = spec.d;
  const double expo = -0.5 * (d + spec.alpha);
  const double beta = -0.5 * (d + 1);
  const double e2 = eps_i * eps_i;
  auto integrand = [&](Point y) {
    double rk2, ri2;
    if (d == 1) {
      const double dk = y.x - xk.x, di = y.x - xi.x;
      rk2 = dk * dk;
      ri2 = di * di;
    } else {
      const double dkx = y.x - xk.x, dky = y.y - xk.y;
      const double dix = y.x - xi.x, diy = y.y - xi.y;
      rk2 = dkx * dkx + dky * dky;
      ri2 = dix * dix + diy * diy;
    }
    return std::pow(1.0 + e2 * ri2, beta) * std::pow(rk2, expo);
  };
  double total = 0.0;
  for (const QuadPiece& piece : domain.complement_decomposition()) {
    const bool near = Domain::piece_distance(piece, xk) < 0.5;
    total += integrate_piece(piece, integrand, cfg, near ? &xk : nullptr);
  }
  return total;
}

double boundary_data_integral(const Domain& domain, Point xk,
                              const std::function<double(Point, double)>& g, double t,
                              const OperatorSpec& spec, const QuadConfig& cfg,
                              const std::optional<Box>& support) {
  g_exterior_calls.fetch_add(1, std::memory_order_relaxed);
  const int d = spec.d;
  const double expo = -0.5 * (d + spec.alpha);
  auto integrand = [&](Point y) {
    double rk2;
    if (d == 1) {
      const double dk = y.x - xk.x;
      rk2 = dk * dk;
    } else {
      const double dkx = y.x - xk.x, dky = y.y - xk.y;
      rk2 = dkx * dkx + dky * dky;
    }
    return g(y, t) * std::pow(rk2, expo);
  };
  double total = 0.0;
  for (const QuadPiece& piece : domain.complement_decomposition()) {
    QuadPiece effective = piece;
    if (support) {
      auto clipped = clip_piece(piece, *support);
      if (!clipped) continue;
      effective = *clipped;
    }
    const bool near = Domain::piece_distance(effective, xk) < 0.5;
    const Point* anchor = near ? &xk : nullptr;
    const bool ray1d =
        effective.dim == 1 && (std::isinf(effective.lo[0]) || std::isinf(effective.hi[0]));
    if (ray1d) {
      try {
        total += integrate_piece(effective, integrand, cfg, anchor);
      } catch (const QuadratureError&) {
        total += oscillatory_ray_integral(effective, integrand, cfg, anchor);
      }
    } else {
      total += integrate_piece(effective, integrand, cfg, anchor);
    }
  }
  return total;
}

long exterior_integral_calls() { return g_exterior_calls.load(std::memory_order_relaxed); }

void reset_exterior_integral_calls() {
  g_exterior_calls.store(0, std::memory_order_relaxed);
}

}  // namespace gimq
