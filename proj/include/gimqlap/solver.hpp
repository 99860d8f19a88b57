#pragma once

#include <Eigen/Dense>
#include <limits>
#include <vector>

#include "gimqlap/assembly.hpp"

namespace gimq {

/// Result of one experiment: expansion coefficients plus diagnostics.
struct SolveReport {
  Eigen::VectorXd lambda;
  double rms = std::numeric_limits<double>::quiet_NaN();
  double cond2 = std::numeric_limits<double>::quiet_NaN();
  double wall_time = 0.0;
  bool residual_warning = false;
};

/// Square system solved in the steady case: operator rows stacked over the
/// boundary-interpolation rows,
///   [kappa * A + reaction * Phi_top; Phi_bottom].
Eigen::MatrixXd stacked_steady_matrix(const CollocationSystem& sys,
                                      const OperatorSpec& spec);

/// Direct dense solve of the stacked steady system against [b; g].
/// Sets *residual_warning when the solution fails the backward-error check
/// residual_inf <= 1e-10 * |S|_inf * |lambda|_inf (expected for systems
/// conditioned beyond working precision).
Eigen::VectorXd solve_steady(const CollocationSystem& sys, const OperatorSpec& spec,
                             const Eigen::VectorXd& b, const Eigen::VectorXd& g,
                             bool* residual_warning = nullptr);

/// Interpolation coefficients of the initial state: solves Phi lambda = u0.
Eigen::VectorXd initial_coeffs(const Eigen::MatrixXd& phi,
                               const Eigen::VectorXd& u0_values);

/// Crank-Nicolson evolution of d/dt u = -kappa (-Lap)^{alpha/2} u
/// + reaction * u + f with boundary/complement data from `data`. Returns
/// coefficients for every time level, lambda^0 first. The stepping matrix is
/// factored exactly once (see cn_factorization_count).
std::vector<Eigen::VectorXd> cn_evolve(const CollocationSystem& sys,
                                       const PointSet& points, const Domain& domain,
                                       const OperatorSpec& spec, const ProblemData& data,
                                       double tau, int n_steps, const QuadConfig& cfg,
                                       int threads = 1);

/// Number of stepping-matrix factorizations performed by cn_evolve since the
/// last reset; lets tests assert the factor-once property.
long cn_factorization_count();
void reset_cn_factorization_count();

/// Expansion values sum_i lambda_i phi^{eps_i}(|x - x_i|) at the requested
/// evaluation points.
Eigen::VectorXd evaluate_solution(const PointSet& points, const Eigen::VectorXd& lambda,
                                  const std::vector<Point>& eval_points);

/// Root mean square of the componentwise difference.
double rms_error(const Eigen::VectorXd& numeric, const Eigen::VectorXd& exact);

/// 2-norm condition number (largest over smallest singular value) of a dense
/// square matrix; +infinity when the smallest singular value is zero.
double condition_number_2(const Eigen::MatrixXd& mat);

}  // namespace gimq
