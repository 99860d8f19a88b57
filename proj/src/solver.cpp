#include "gimqlap/solver.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "gimqlap/errors.hpp"
#include "gimqlap/kernel.hpp"

namespace gimq {

namespace {

std::atomic<long> g_cn_factorizations{0};

// Shared direct solve with a singularity check; `label` names the caller in
// error messages.
Eigen::VectorXd lu_solve(const Eigen::MatrixXd& mat, const Eigen::VectorXd& rhs,
                         const char* label) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(mat);
  Eigen::VectorXd x = lu.solve(rhs);
  // rank deficiency rarely yields non-finite entries: roundoff keeps the
  // dead pivot just above zero and the solve returns huge garbage instead.
  // An inconsistent right side then leaves an O(|rhs|) residual, while a
  // solvable system stays many orders below it however ill-conditioned.
  const double rhs_norm = rhs.lpNorm<Eigen::Infinity>();
  const bool inconsistent =
      x.allFinite() &&
      (mat * x - rhs).lpNorm<Eigen::Infinity>() > 1e-3 * rhs_norm;
  if (!x.allFinite() || inconsistent) {
    const double rcond = lu.rcond();
    throw SingularMatrixError(std::string(label) +
                                  ": matrix is singular to working precision",
                              rcond > 0.0 ? 1.0 / rcond
                                          : std::numeric_limits<double>::infinity());
  }
  return x;
}

}  // namespace

Eigen::MatrixXd stacked_steady_matrix(const CollocationSystem& sys,
                                      const OperatorSpec& spec) {
  const int m = sys.m;
  const int n = sys.n_bar;
  Eigen::MatrixXd s(n, n);
  s.topRows(m) = spec.kappa * sys.a_mat;
  if (spec.reaction != 0.0) s.topRows(m) += spec.reaction * sys.phi.topRows(m);
  s.bottomRows(n - m) = sys.phi.bottomRows(n - m);
  return s;
}

Eigen::VectorXd solve_steady(const CollocationSystem& sys, const OperatorSpec& spec,
                             const Eigen::VectorXd& b, const Eigen::VectorXd& g,
                             bool* residual_warning) {
  if (b.size() != sys.m || g.size() != sys.n_bar - sys.m)
    throw std::invalid_argument("solve_steady: right-side sizes do not match the system");
  const Eigen::MatrixXd s = stacked_steady_matrix(sys, spec);
  Eigen::VectorXd rhs(sys.n_bar);
  rhs.head(sys.m) = b;
  rhs.tail(sys.n_bar - sys.m) = g;
  Eigen::VectorXd lambda = lu_solve(s, rhs, "solve_steady");
  if (residual_warning) {
    const double res = (s * lambda - rhs).lpNorm<Eigen::Infinity>();
    const double scale = s.lpNorm<Eigen::Infinity>() * lambda.lpNorm<Eigen::Infinity>();
    *residual_warning = res > 1e-10 * scale;
  }
  return lambda;
}

Eigen::VectorXd initial_coeffs(const Eigen::MatrixXd& phi,
                               const Eigen::VectorXd& u0_values) {
  if (phi.rows() != phi.cols() || phi.rows() != u0_values.size())
    throw std::invalid_argument("initial_coeffs: size mismatch");
  return lu_solve(phi, u0_values, "initial_coeffs");
}

std::vector<Eigen::VectorXd> cn_evolve(const CollocationSystem& sys,
                                       const PointSet& points, const Domain& domain,
                                       const OperatorSpec& spec, const ProblemData& data,
                                       double tau, int n_steps, const QuadConfig& cfg,
                                       int threads) {
  if (!(tau > 0.0)) throw std::invalid_argument("cn_evolve: tau must be positive");
  const int m = sys.m;
  const int n = sys.n_bar;
  const int nb = n - m;

  Eigen::VectorXd u0 = Eigen::VectorXd::Zero(n);
  if (data.u0)
    for (int i = 0; i < n; ++i) u0(i) = data.u0(points.pts[i]);
  std::vector<Eigen::VectorXd> levels;
  levels.reserve(n_steps + 1);
  levels.push_back(initial_coeffs(sys.phi, u0));

  // d/dt (Phi_top lambda) = -(kappa A - reaction Phi_top) lambda + b
  Eigen::MatrixXd bmat = spec.kappa * sys.a_mat;
  if (spec.reaction != 0.0) bmat -= spec.reaction * sys.phi.topRows(m);

  Eigen::MatrixXd step(n, n);
  step.topRows(m) = sys.phi.topRows(m) + (0.5 * tau) * bmat;
  step.bottomRows(nb) = sys.phi.bottomRows(nb);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(step);
  g_cn_factorizations.fetch_add(1, std::memory_order_relaxed);
  const Eigen::MatrixXd explicit_top = sys.phi.topRows(m) - (0.5 * tau) * bmat;

  auto level_b = [&](double t) {
    return build_b(points, domain, spec, data, t, cfg, threads);
  };
  Eigen::VectorXd b_prev = level_b(0.0);
  Eigen::VectorXd b_next = b_prev;
  const bool b_static = data.f_time_invariant && data.g_time_invariant;

  Eigen::VectorXd rhs(n);
  for (int step_idx = 1; step_idx <= n_steps; ++step_idx) {
    const double t_next = step_idx * tau;
    if (!b_static) {
      // the costly complement integral is only time-dependent through g
      if (data.g_time_invariant) {
        b_next = b_prev;
        if (data.f) {
          Eigen::VectorXd delta(m);
          for (int k = 0; k < m; ++k)
            delta(k) = data.f(points.pts[k], t_next) - data.f(points.pts[k], t_next - tau);
          b_next += delta;
        }
      } else {
        b_next = level_b(t_next);
      }
    }
    rhs.head(m) = explicit_top * levels.back() + (0.5 * tau) * (b_prev + b_next);
    if (data.g_boundary)
      for (int j = 0; j < nb; ++j) rhs(m + j) = data.g_boundary(points.pts[m + j], t_next);
    else
      rhs.tail(nb).setZero();
    Eigen::VectorXd next = lu.solve(rhs);
    if (!next.allFinite())
      throw SingularMatrixError("cn_evolve: stepping matrix is singular to working precision",
                                std::numeric_limits<double>::infinity());
    levels.push_back(std::move(next));
    b_prev = b_next;
  }
  return levels;
}

long cn_factorization_count() {
  return g_cn_factorizations.load(std::memory_order_relaxed);
}

void reset_cn_factorization_count() {
  g_cn_factorizations.store(0, std::memory_order_relaxed);
}

Eigen::VectorXd evaluate_solution(const PointSet& points, const Eigen::VectorXd& lambda,
                                  const std::vector<Point>& eval_points) {
  if (lambda.size() != points.n_bar())
    throw std::invalid_argument("evaluate_solution: coefficient count mismatch");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(eval_points.size());
  for (size_t j = 0; j < eval_points.size(); ++j) {
    double acc = 0.0;
    for (int i = 0; i < points.n_bar(); ++i)
      acc += lambda(i) * gimq_eval(points.dim, points.shape[i],
                                   distance(eval_points[j], points.pts[i], points.dim));
    out(static_cast<Eigen::Index>(j)) = acc;
  }
  return out;
}

double rms_error(const Eigen::VectorXd& numeric, const Eigen::VectorXd& exact) {
  if (numeric.size() != exact.size())
    throw std::invalid_argument("rms_error: length mismatch");
  if (numeric.size() == 0) throw std::invalid_argument("rms_error: empty input");
  return std::sqrt((numeric - exact).squaredNorm() / numeric.size());
}

double condition_number_2(const Eigen::MatrixXd& mat) {
  if (mat.rows() != mat.cols())
    throw std::invalid_argument("condition_number_2: matrix must be square");
  if (mat.rows() > 2000)
    throw std::invalid_argument("condition_number_2: matrix too large for dense SVD");
  // Jacobi resolves sigma_min near eps*sigma_max where the divide-and-conquer
  // kernel rounds it to zero; fall back to the fast kernel only when the
  // cubic-cost Jacobi sweep would hurt.
  Eigen::VectorXd sv;
  if (mat.rows() <= 512) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(mat);
    sv = svd.singularValues();
  } else {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(mat);
    sv = svd.singularValues();
  }
  const double smin = sv(sv.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

}  // namespace gimq
