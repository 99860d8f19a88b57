#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "gimqlap/extquad.hpp"
#include "gimqlap/geometry.hpp"
#include "gimqlap/kernel.hpp"

namespace gimq {

/// Dense collocation objects: basis matrix and differentiation matrix,
/// rows ordered interior-first (matching the PointSet layout).
struct CollocationSystem {
  Eigen::MatrixXd phi;    // n_bar x n_bar
  Eigen::MatrixXd a_mat;  // m x n_bar
  int m = 0;
  int n_bar = 0;
};

/// Callable problem data. Null functions mean identically zero, which lets
/// the assembly skip the corresponding work entirely.
struct ProblemData {
  std::function<double(Point, double)> f;           // source term
  std::function<double(Point, double)> g_boundary;  // data on the boundary
  std::function<double(Point, double)> g_exterior;  // data on the complement
  std::function<double(Point)> u0;                  // initial state
  bool f_time_invariant = true;
  bool g_time_invariant = true;
  std::optional<Box> g_support;  // compact-support hint for g_exterior
};

/// Basis matrix with test points equal to centers.
Eigen::MatrixXd build_phi(const PointSet& points);

/// Basis matrix evaluated at arbitrary test points against the centers.
Eigen::MatrixXd build_phi_at(const std::vector<Point>& test, const PointSet& centers);

/// Differentiation matrix: operator image at interior test points plus the
/// complement kernel-tail term (gated off exactly at alpha == 2).
/// threads = 0 uses all hardware threads.
Eigen::MatrixXd build_a(const PointSet& points, const Domain& domain,
                        const OperatorSpec& spec, const QuadConfig& cfg,
                        int threads = 1);

/// Load vector at interior points: source plus the complement data integral.
Eigen::VectorXd build_b(const PointSet& points, const Domain& domain,
                        const OperatorSpec& spec, const ProblemData& data, double t,
                        const QuadConfig& cfg, int threads = 1);

/// The complement-data part of build_b alone (zero when alpha == 2 or
/// g_exterior is null); split out so time stepping can cache it.
Eigen::VectorXd build_b_tail(const PointSet& points, const Domain& domain,
                             const OperatorSpec& spec, const ProblemData& data, double t,
                             const QuadConfig& cfg, int threads = 1);

/// Boundary-condition vector at the boundary points.
Eigen::VectorXd build_g_vec(const PointSet& points, const ProblemData& data, double t);

/// Binary matrix dump: eight little-endian int64 header words
/// (magic, version, rows, cols, d, M, N-bar, reserved) followed by the
/// row-major float64 payload.
void write_matrix_dump(const std::string& path, const Eigen::MatrixXd& mat, int d, int m,
                       int n_bar);

struct MatrixDump {
  std::int64_t magic = 0, version = 0, d = 0, m = 0, n_bar = 0;
  Eigen::MatrixXd mat;
};

MatrixDump read_matrix_dump(const std::string& path);

}  // namespace gimq
