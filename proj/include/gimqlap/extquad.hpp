#pragma once

#include <functional>
#include <optional>

#include "gimqlap/geometry.hpp"
#include "gimqlap/kernel.hpp"

namespace gimq {

/// Tolerances and budget for the adaptive exterior quadrature.
struct QuadConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;

  /// Tighter relative tolerance in 1D (1e-10) than in 2D (1e-8).
  static QuadConfig defaults(int dim) {
    QuadConfig cfg;
    cfg.rel_tol = dim == 1 ? 1e-10 : 1e-8;
    return cfg;
  }
};

/// Adaptive Gauss-Kronrod 7/15 integration of f over [a, b]; either bound
/// may be infinite (half-infinite ranges are mapped to (0, 1]).
double integrate_interval(const std::function<double(double)>& f, double a, double b,
                          const QuadConfig& cfg);

/// Adaptive (tensor) Gauss-Kronrod integration of f over an axis-aligned
/// piece. When `near` is given, initial cells are geometrically refined
/// toward its projection onto the piece, which resolves integrands peaked
/// just across the piece edge.
double integrate_piece(const QuadPiece& piece, const std::function<double(Point)>& f,
                       const QuadConfig& cfg, const Point* near = nullptr);

/// Integral over the domain complement of
///   (1 + eps_i^2 |y - xi|^2)^{-(d+1)/2} / |xk - y|^{d+alpha}.
/// Requires alpha < 2 and xk strictly interior. Always positive.
double kernel_tail_integral(const Domain& domain, Point xk, Point xi, double eps_i,
                            const OperatorSpec& spec, const QuadConfig& cfg);

/// Integral over the domain complement of g(y, t) / |xk - y|^{d+alpha}.
/// When `support` is given, g is treated as zero outside that box and
/// only the intersection of each complement piece with it is integrated.
double boundary_data_integral(const Domain& domain, Point xk,
                              const std::function<double(Point, double)>& g, double t,
                              const OperatorSpec& spec, const QuadConfig& cfg,
                              const std::optional<Box>& support = std::nullopt);

/// Running count of exterior-integral evaluations (kernel tail and boundary
/// data); lets callers assert that the alpha == 2 path never triggers any.
long exterior_integral_calls();
void reset_exterior_integral_calls();

}  // namespace gimq
