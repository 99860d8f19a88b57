#include "gimqlap/assembly.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "gimqlap/errors.hpp"

namespace gimq {

namespace {

constexpr std::int64_t kDumpMagic = 0x3150414C514D4947LL;  // "GIMQLAP1"
constexpr std::int64_t kDumpVersion = 1;

// Runs fn(row) for row in [0, n); threads = 0 means hardware concurrency.
// The first exception thrown by any worker is rethrown on the caller.
void parallel_rows(int n, int threads, const std::function<void(int)>& fn) {
  if (threads == 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (int row = 0; row < n; ++row) fn(row);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    while (true) {
      const int row = next.fetch_add(1);
      if (row >= n) return;
      {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (first_error) return;
      }
      try {
        fn(row);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

Eigen::MatrixXd build_phi(const PointSet& points) {
  return build_phi_at(points.pts, points);
}

Eigen::MatrixXd build_phi_at(const std::vector<Point>& test, const PointSet& centers) {
  if (!centers.has_shape())
    throw std::invalid_argument("build_phi: shape parameters not assigned");
  const int rows = static_cast<int>(test.size());
  const int cols = centers.n_bar();
  Eigen::MatrixXd phi(rows, cols);
  for (int k = 0; k < rows; ++k)
    for (int i = 0; i < cols; ++i)
      phi(k, i) = gimq_eval(centers.dim, centers.shape[i],
                            distance(test[k], centers.pts[i], centers.dim));
  return phi;
}

Eigen::MatrixXd build_a(const PointSet& points, const Domain& domain,
                        const OperatorSpec& spec, const QuadConfig& cfg, int threads) {
  if (!points.has_shape())
    throw std::invalid_argument("build_a: shape parameters not assigned");
  const int m = points.m;
  const int n = points.n_bar();
  const bool with_tail = spec.zeta() != 0;
  const double c_tail = with_tail ? spec.c_tail() : 0.0;
  Eigen::MatrixXd a(m, n);
  parallel_rows(m, threads, [&](int k) {
    const Point xk = points.pts[k];
    for (int i = 0; i < n; ++i) {
      const double eps = points.shape[i];
      double entry =
          gimq_fraclap(spec, eps, distance(xk, points.pts[i], points.dim));
      if (with_tail) {
        try {
          entry += c_tail * kernel_tail_integral(domain, xk, points.pts[i], eps, spec, cfg);
        } catch (const QuadratureError& err) {
          char where[96];
          std::snprintf(where, sizeof(where), " [A entry k=%d, i=%d]", k, i);
          throw QuadratureError(std::string(err.what()) + where, err.best_estimate,
                                err.error_bound);
        }
      }
      a(k, i) = entry;
    }
  });
  return a;
}

Eigen::VectorXd build_b_tail(const PointSet& points, const Domain& domain,
                             const OperatorSpec& spec, const ProblemData& data, double t,
                             const QuadConfig& cfg, int threads) {
  const int m = points.m;
  Eigen::VectorXd tail = Eigen::VectorXd::Zero(m);
  if (spec.zeta() == 0 || !data.g_exterior) return tail;
  const double c_tail = spec.c_tail();
  parallel_rows(m, threads, [&](int k) {
    try {
      tail(k) = c_tail * boundary_data_integral(domain, points.pts[k], data.g_exterior, t,
                                                spec, cfg, data.g_support);
    } catch (const QuadratureError& err) {
      char where[64];
      std::snprintf(where, sizeof(where), " [b entry k=%d]", k);
      throw QuadratureError(std::string(err.what()) + where, err.best_estimate,
                            err.error_bound);
    }
  });
  return tail;
}

Eigen::VectorXd build_b(const PointSet& points, const Domain& domain,
                        const OperatorSpec& spec, const ProblemData& data, double t,
                        const QuadConfig& cfg, int threads) {
  Eigen::VectorXd b = build_b_tail(points, domain, spec, data, t, cfg, threads);
  if (data.f)
    for (int k = 0; k < points.m; ++k) b(k) += data.f(points.pts[k], t);
  return b;
}

Eigen::VectorXd build_g_vec(const PointSet& points, const ProblemData& data, double t) {
  const int nb = points.n_boundary();
  Eigen::VectorXd g = Eigen::VectorXd::Zero(nb);
  if (data.g_boundary)
    for (int j = 0; j < nb; ++j) g(j) = data.g_boundary(points.pts[points.m + j], t);
  return g;
}

void write_matrix_dump(const std::string& path, const Eigen::MatrixXd& mat, int d, int m,
                       int n_bar) {
  std::FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw std::runtime_error("write_matrix_dump: cannot open " + path);
  const std::int64_t header[8] = {kDumpMagic,
                                  kDumpVersion,
                                  static_cast<std::int64_t>(mat.rows()),
                                  static_cast<std::int64_t>(mat.cols()),
                                  d,
                                  m,
                                  n_bar,
                                  0};
  bool ok = std::fwrite(header, sizeof(header), 1, fp) == 1;
  for (Eigen::Index r = 0; ok && r < mat.rows(); ++r) {
    for (Eigen::Index c = 0; ok && c < mat.cols(); ++c) {
      const double v = mat(r, c);
      ok = std::fwrite(&v, sizeof(double), 1, fp) == 1;
    }
  }
  ok = std::fclose(fp) == 0 && ok;
  if (!ok) throw std::runtime_error("write_matrix_dump: write failed for " + path);
}

MatrixDump read_matrix_dump(const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "rb");
  if (!fp) throw std::runtime_error("read_matrix_dump: cannot open " + path);
  std::int64_t header[8];
  if (std::fread(header, sizeof(header), 1, fp) != 1) {
    std::fclose(fp);
    throw std::runtime_error("read_matrix_dump: truncated header in " + path);
  }
  MatrixDump dump;
  dump.magic = header[0];
  dump.version = header[1];
  dump.d = header[4];
  dump.m = header[5];
  dump.n_bar = header[6];
  if (dump.magic != kDumpMagic)
    throw std::runtime_error("read_matrix_dump: bad magic in " + path);
  const auto rows = static_cast<Eigen::Index>(header[2]);
  const auto cols = static_cast<Eigen::Index>(header[3]);
  dump.mat.resize(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      double v;
      if (std::fread(&v, sizeof(double), 1, fp) != 1) {
        std::fclose(fp);
        throw std::runtime_error("read_matrix_dump: truncated payload in " + path);
      }
      dump.mat(r, c) = v;
    }
  }
  std::fclose(fp);
  return dump;
}

}  // namespace gimq
