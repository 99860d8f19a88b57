#include "gimqlap/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "gimqlap/detail/format.hpp"

namespace gimq {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Domain Domain::interval(double a, double b) {
  if (!(a < b)) throw std::invalid_argument("interval: need a < b");
  Domain d;
  d.kind_ = DomainKind::Interval;
  d.dim_ = 1;
  d.lo_[0] = a;
  d.hi_[0] = b;
  return d;
}

Domain Domain::rectangle(Point lo, Point hi) {
  if (!(lo.x < hi.x && lo.y < hi.y))
    throw std::invalid_argument("rectangle: need lo < hi componentwise");
  Domain d;
  d.kind_ = DomainKind::Rectangle;
  d.dim_ = 2;
  d.lo_[0] = lo.x;
  d.lo_[1] = lo.y;
  d.hi_[0] = hi.x;
  d.hi_[1] = hi.y;
  return d;
}

Domain Domain::lshape(Point lo, Point hi, Point corner) {
  if (!(lo.x < hi.x && lo.y < hi.y))
    throw std::invalid_argument("lshape: need lo < hi componentwise");
  if (!(corner.x > lo.x && corner.x < hi.x && corner.y > lo.y && corner.y < hi.y))
    throw std::invalid_argument("lshape: corner must lie strictly inside the box");
  Domain d;
  d.kind_ = DomainKind::LShape;
  d.dim_ = 2;
  d.lo_[0] = lo.x;
  d.lo_[1] = lo.y;
  d.hi_[0] = hi.x;
  d.hi_[1] = hi.y;
  // removed quadrant is [corner, hi]
  d.ilo_[0] = corner.x;
  d.ilo_[1] = corner.y;
  d.ihi_[0] = hi.x;
  d.ihi_[1] = hi.y;
  return d;
}

Domain Domain::rectangle_with_hole(Point lo, Point hi, Point hole_lo, Point hole_hi) {
  if (!(lo.x < hi.x && lo.y < hi.y))
    throw std::invalid_argument("rectangle_with_hole: need lo < hi componentwise");
  if (!(hole_lo.x < hole_hi.x && hole_lo.y < hole_hi.y))
    throw std::invalid_argument("rectangle_with_hole: need hole_lo < hole_hi componentwise");
  if (!(hole_lo.x > lo.x && hole_lo.y > lo.y && hole_hi.x < hi.x && hole_hi.y < hi.y))
    throw std::invalid_argument("rectangle_with_hole: hole must lie strictly inside the box");
  Domain d;
  d.kind_ = DomainKind::RectangleWithHole;
  d.dim_ = 2;
  d.lo_[0] = lo.x;
  d.lo_[1] = lo.y;
  d.hi_[0] = hi.x;
  d.hi_[1] = hi.y;
  d.ilo_[0] = hole_lo.x;
  d.ilo_[1] = hole_lo.y;
  d.ihi_[0] = hole_hi.x;
  d.ihi_[1] = hole_hi.y;
  return d;
}

Region Domain::classify(Point p, double tol) const {
  switch (kind_) {
    case DomainKind::Interval: {
      if (p.x < lo_[0] - tol || p.x > hi_[0] + tol) return Region::Exterior;
      if (std::abs(p.x - lo_[0]) <= tol || std::abs(p.x - hi_[0]) <= tol)
        return Region::Boundary;
      return Region::Interior;
    }
    case DomainKind::Rectangle: {
      if (p.x < lo_[0] - tol || p.x > hi_[0] + tol || p.y < lo_[1] - tol ||
          p.y > hi_[1] + tol)
        return Region::Exterior;
      if (std::abs(p.x - lo_[0]) <= tol || std::abs(p.x - hi_[0]) <= tol ||
          std::abs(p.y - lo_[1]) <= tol || std::abs(p.y - hi_[1]) <= tol)
        return Region::Boundary;
      return Region::Interior;
    }
    case DomainKind::LShape: {
      if (p.x < lo_[0] - tol || p.x > hi_[0] + tol || p.y < lo_[1] - tol ||
          p.y > hi_[1] + tol)
        return Region::Exterior;
      // closure keeps x <= cx or y <= cy
      if (p.x > ilo_[0] + tol && p.y > ilo_[1] + tol) return Region::Exterior;
      if (std::abs(p.x - lo_[0]) <= tol || std::abs(p.x - hi_[0]) <= tol ||
          std::abs(p.y - lo_[1]) <= tol || std::abs(p.y - hi_[1]) <= tol)
        return Region::Boundary;
      // edges of the removed quadrant
      if (std::abs(p.x - ilo_[0]) <= tol && p.y >= ilo_[1] - tol) return Region::Boundary;
      if (std::abs(p.y - ilo_[1]) <= tol && p.x >= ilo_[0] - tol) return Region::Boundary;
      return Region::Interior;
    }
    case DomainKind::RectangleWithHole: {
      if (p.x < lo_[0] - tol || p.x > hi_[0] + tol || p.y < lo_[1] - tol ||
          p.y > hi_[1] + tol)
        return Region::Exterior;
      if (p.x > ilo_[0] + tol && p.x < ihi_[0] - tol && p.y > ilo_[1] + tol &&
          p.y < ihi_[1] - tol)
        return Region::Exterior;  // open hole
      if (std::abs(p.x - lo_[0]) <= tol || std::abs(p.x - hi_[0]) <= tol ||
          std::abs(p.y - lo_[1]) <= tol || std::abs(p.y - hi_[1]) <= tol)
        return Region::Boundary;
      if (p.x >= ilo_[0] - tol && p.x <= ihi_[0] + tol && p.y >= ilo_[1] - tol &&
          p.y <= ihi_[1] + tol)
        return Region::Boundary;  // hole frame
      return Region::Interior;
    }
  }
  return Region::Exterior;
}

Box Domain::bounding_box() const {
  Box b;
  b.lo[0] = lo_[0];
  b.lo[1] = dim_ == 2 ? lo_[1] : 0.0;
  b.hi[0] = hi_[0];
  b.hi[1] = dim_ == 2 ? hi_[1] : 0.0;
  return b;
}

namespace {

QuadPiece piece1d(double a, double b) {
  QuadPiece p;
  p.dim = 1;
  p.lo[0] = a;
  p.hi[0] = b;
  p.lo[1] = p.hi[1] = 0.0;
  return p;
}

QuadPiece piece2d(double ax, double bx, double ay, double by) {
  QuadPiece p;
  p.dim = 2;
  p.lo[0] = ax;
  p.hi[0] = bx;
  p.lo[1] = ay;
  p.hi[1] = by;
  return p;
}

// Frame of 8 pieces covering R^2 minus the open box: four half-infinite
// strips flush with the box edges plus four quadrant corners.
void append_box_frame(std::vector<QuadPiece>& out, double ax, double bx, double ay,
                      double by) {
  out.push_back(piece2d(-kInf, ax, ay, by));   // left strip
  out.push_back(piece2d(bx, kInf, ay, by));    // right strip
  out.push_back(piece2d(ax, bx, -kInf, ay));   // bottom strip
  out.push_back(piece2d(ax, bx, by, kInf));    // top strip
  out.push_back(piece2d(-kInf, ax, -kInf, ay));  // corners
  out.push_back(piece2d(bx, kInf, -kInf, ay));
  out.push_back(piece2d(-kInf, ax, by, kInf));
  out.push_back(piece2d(bx, kInf, by, kInf));
}

}  // namespace

std::vector<QuadPiece> Domain::complement_decomposition() const {
  std::vector<QuadPiece> out;
  switch (kind_) {
    case DomainKind::Interval:
      out.push_back(piece1d(-kInf, lo_[0]));
      out.push_back(piece1d(hi_[0], kInf));
      break;
    case DomainKind::Rectangle:
      append_box_frame(out, lo_[0], hi_[0], lo_[1], hi_[1]);
      break;
    case DomainKind::LShape:
      append_box_frame(out, lo_[0], hi_[0], lo_[1], hi_[1]);
      // removed quadrant is part of the complement
      out.push_back(piece2d(ilo_[0], ihi_[0], ilo_[1], ihi_[1]));
      break;
    case DomainKind::RectangleWithHole:
      append_box_frame(out, lo_[0], hi_[0], lo_[1], hi_[1]);
      out.push_back(piece2d(ilo_[0], ihi_[0], ilo_[1], ihi_[1]));
      break;
  }
  return out;
}

double Domain::piece_distance(const QuadPiece& piece, Point p) {
  double dx = 0.0;
  if (p.x < piece.lo[0]) dx = piece.lo[0] - p.x;
  else if (p.x > piece.hi[0]) dx = p.x - piece.hi[0];
  if (piece.dim == 1) return dx;
  double dy = 0.0;
  if (p.y < piece.lo[1]) dy = piece.lo[1] - p.y;
  else if (p.y > piece.hi[1]) dy = p.y - piece.hi[1];
  return std::hypot(dx, dy);
}

double distance(const Point& a, const Point& b, int dim) {
  double dx = a.x - b.x;
  if (dim == 1) return std::abs(dx);
  return std::hypot(dx, a.y - b.y);
}

PointSet uniform_points(const Domain& domain, int resolution) {
  if (resolution < 2) throw std::invalid_argument("uniform_points: resolution must be >= 2");
  PointSet ps;
  ps.dim = domain.dim();

  if (domain.dim() == 1) {
    const double a = domain.lo()[0], b = domain.hi()[0];
    const double step = (b - a) / (resolution - 1);
    std::vector<Point> interior, boundary;
    for (int i = 0; i < resolution; ++i) {
      Point p{i == resolution - 1 ? b : a + i * step, 0.0};
      if (i == 0 || i == resolution - 1)
        boundary.push_back(p);
      else
        interior.push_back(p);
    }
    ps.m = static_cast<int>(interior.size());
    ps.pts = std::move(interior);
    ps.pts.insert(ps.pts.end(), boundary.begin(), boundary.end());
    return ps;
  }

  const Box bb = domain.bounding_box();
  const double sx = (bb.hi[0] - bb.lo[0]) / (resolution - 1);
  const double sy = (bb.hi[1] - bb.lo[1]) / (resolution - 1);
  std::vector<Point> interior, boundary;
  for (int j = 0; j < resolution; ++j) {
    const double y = j == resolution - 1 ? bb.hi[1] : bb.lo[1] + j * sy;
    for (int i = 0; i < resolution; ++i) {
      const double x = i == resolution - 1 ? bb.hi[0] : bb.lo[0] + i * sx;
      Point p{x, y};
      switch (domain.classify(p)) {
        case Region::Interior:
          interior.push_back(p);
          break;
        case Region::Boundary:
          boundary.push_back(p);
          break;
        case Region::Exterior:
          break;
      }
    }
  }
  ps.m = static_cast<int>(interior.size());
  ps.pts = std::move(interior);
  ps.pts.insert(ps.pts.end(), boundary.begin(), boundary.end());
  return ps;
}

int count_for_resolution(const Domain& domain, int resolution) {
  return uniform_points(domain, resolution).n_bar();
}

int resolution_for_count(const Domain& domain, int n_bar_target) {
  if (n_bar_target < 1) throw std::invalid_argument("resolution_for_count: target must be >= 1");
  int best_res = 2;
  long best_diff = std::numeric_limits<long>::max();
  for (int res = 2; res <= 400; ++res) {
    const int n = count_for_resolution(domain, res);
    const long diff = std::labs(static_cast<long>(n) - n_bar_target);
    if (diff < best_diff) {
      best_diff = diff;
      best_res = res;
    }
    if (n >= 4 * n_bar_target && diff > best_diff) break;
  }
  return best_res;
}

void write_points_csv(const PointSet& ps, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_points_csv: cannot open " + path);
  out << (ps.dim == 2 ? "x,y,role,epsilon\n" : "x,role,epsilon\n");
  for (size_t i = 0; i < ps.pts.size(); ++i) {
    const Point& p = ps.pts[i];
    out << detail::format_double(p.x);
    if (ps.dim == 2) out << ',' << detail::format_double(p.y);
    out << ',' << (static_cast<int>(i) < ps.m ? "interior" : "boundary");
    out << ',';
    if (ps.has_shape()) out << detail::format_double(ps.shape[i]);
    out << '\n';
  }
  if (!out) throw std::runtime_error("write_points_csv: write failed for " + path);
}

}  // namespace gimq
