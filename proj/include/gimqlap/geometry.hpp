#pragma once

#include <string>
#include <vector>

namespace gimq {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Axis-aligned box; entries may be +-infinity.
struct Box {
  double lo[2];
  double hi[2];
};

// One piece of an axis-aligned decomposition of the complement of a domain,
// possibly unbounded along either axis. 1D pieces use axis 0 only.
struct QuadPiece {
  int dim = 1;
  double lo[2] = {0.0, 0.0};
  double hi[2] = {0.0, 0.0};
};

enum class Region { Interior, Boundary, Exterior };

enum class DomainKind { Interval, Rectangle, LShape, RectangleWithHole };

// Supported computational domains. The L-shape removes the closed upper-right
// corner box [corner, hi) from the rectangle; the holed rectangle removes a
// closed inner box (its boundary belongs to the domain boundary).
class Domain {
 public:
  static Domain interval(double a, double b);
  static Domain rectangle(Point lo, Point hi);
  static Domain lshape(Point lo, Point hi, Point corner);
  static Domain rectangle_with_hole(Point lo, Point hi, Point hole_lo, Point hole_hi);

  int dim() const { return dim_; }
  DomainKind kind() const { return kind_; }

  // Classification with a boundary tolerance; points further than tol from
  // the boundary are interior/exterior by the open-set membership.
  Region classify(Point p, double tol = 1e-12) const;
  bool contains(Point p) const { return classify(p) == Region::Interior; }
  bool on_boundary(Point p, double tol = 1e-12) const { return classify(p, tol) == Region::Boundary; }

  // Axis-aligned pieces covering the complement of the closure, pairwise
  // disjoint up to measure zero.
  std::vector<QuadPiece> complement_decomposition() const;

  Box bounding_box() const;

  // Euclidean distance from p to the piece (0 if inside).
  static double piece_distance(const QuadPiece& piece, Point p);

  const double* lo() const { return lo_; }
  const double* hi() const { return hi_; }
  const double* inner_lo() const { return ilo_; }
  const double* inner_hi() const { return ihi_; }

 private:
  Domain() = default;
  DomainKind kind_ = DomainKind::Interval;
  int dim_ = 1;
  double lo_[2] = {0, 0}, hi_[2] = {0, 0};    // outer box
  double ilo_[2] = {0, 0}, ihi_[2] = {0, 0};  // corner box / hole
};

// Collocation points: interior entries first (indices 0..m-1), boundary
// entries after. Shape parameters stay empty until assigned.
struct PointSet {
  int dim = 1;
  int m = 0;  // number of interior points
  std::vector<Point> pts;
  std::vector<double> shape;

  int n_bar() const { return static_cast<int>(pts.size()); }
  int n_boundary() const { return n_bar() - m; }
  bool has_shape() const { return !shape.empty(); }
};

// Tensor grid of `resolution` points per axis over the bounding box,
// classified against the domain; exterior grid points are dropped.
// 1D: resolution = total number of points including the two endpoints.
PointSet uniform_points(const Domain& domain, int resolution);

// Number of points uniform_points would return.
int count_for_resolution(const Domain& domain, int resolution);

// Smallest resolution whose point count is closest to target (ties toward
// the smaller resolution).
int resolution_for_count(const Domain& domain, int target);

// CSV export: header x[,y],role,epsilon; role is "interior" or "boundary";
// epsilon column is empty when shape parameters are unset.
void write_points_csv(const PointSet& points, const std::string& path);

double distance(const Point& a, const Point& b, int dim);

}  // namespace gimq
