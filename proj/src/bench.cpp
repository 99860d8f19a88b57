#include "gimqlap/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <stdexcept>

#include "gimqlap/detail/format.hpp"
#include "gimqlap/errors.hpp"
#include "gimqlap/kernel.hpp"
#include "gimqlap/shapeparam.hpp"
#include "gimqlap/specfun.hpp"

namespace gimq {

namespace {

constexpr double kSqrt2OverPi = 0.79788456080286536;  // sqrt(2/pi)

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha <= 2.0))
    throw std::invalid_argument("benchmark: alpha must lie in (0, 2]");
}

double sinc_profile(double x) {
  // sqrt(2/pi) sin(x)/x, continuous through x = 0.
  if (std::abs(x) < 1e-8) return kSqrt2OverPi * (1.0 - x * x / 6.0);
  return kSqrt2OverPi * std::sin(x) / x;
}

}  // namespace

Benchmark make_poisson1d_hom(double alpha, int s) {
  require_alpha(alpha);
  if (s < 0) throw std::invalid_argument("poisson1d_hom: s must be >= 0");
  Benchmark bench;
  bench.id = "poisson1d_hom";
  bench.domain = Domain::interval(-1.0, 1.0);
  bench.spec = OperatorSpec{1, alpha, 1.0, 0.0};
  const double coef = std::pow(2.0, alpha) * gamma(0.5 * (alpha + 1.0)) *
                      gamma(s + 1.0 + 0.5 * alpha) /
                      (kSqrtPi * gamma(s + 1.0));
  bench.data.f = [alpha, s, coef](Point p, double) {
    // Terminating hypergeometric sum: the (-s)_n factor kills n > s.
    const double x2 = p.x * p.x;
    double term = 1.0, sum = 1.0;
    for (int n = 0; n < s; ++n) {
      term *= (0.5 * (alpha + 1.0) + n) * (-s + n) / ((0.5 + n) * (n + 1.0));
      term *= x2;
      sum += term;
    }
    return coef * sum;
  };
  bench.exact = [alpha, s](Point p) {
    const double w = 1.0 - p.x * p.x;
    return w > 0.0 ? std::pow(w, s + 0.5 * alpha) : 0.0;
  };
  // Zero exterior data; leaving the callbacks empty short-circuits the
  // complement quadrature entirely.
  return bench;
}

Benchmark make_poisson1d_sinc(double alpha) {
  require_alpha(alpha);
  Benchmark bench;
  bench.id = "poisson1d_sinc";
  bench.domain = Domain::interval(-1.0, 1.0);
  bench.spec = OperatorSpec{1, alpha, 1.0, 0.0};
  const double fcoef = std::sqrt(2.0) / ((1.0 + alpha) * kSqrtPi);
  bench.data.f = [alpha, fcoef](Point p, double) {
    return fcoef * hyp1f2_series(0.5 * (alpha + 1.0), 0.5 * (3.0 + alpha), 0.5,
                                 -0.25 * p.x * p.x);
  };
  auto profile = [](Point p, double) { return sinc_profile(p.x); };
  bench.data.g_exterior = profile;  // noncompact: decays only like 1/|x|
  bench.data.g_boundary = profile;
  bench.exact = [](Point p) { return sinc_profile(p.x); };
  return bench;
}

Benchmark make_elliptic_lshape(double alpha) {
  require_alpha(alpha);
  Benchmark bench;
  bench.id = "elliptic_lshape";
  bench.domain = Domain::lshape(Point{-1.0, -1.0}, Point{1.0, 1.0},
                                Point{0.0, 0.0});
  bench.spec = OperatorSpec{2, alpha, 1.0, 2.0};
  const double fcoef = std::pow(2.0, alpha) * gamma(1.0 + 0.5 * alpha);
  bench.data.f = [alpha, fcoef](Point p, double) {
    const double r2 = p.x * p.x + p.y * p.y;
    return fcoef * hyp1f1_elliptic(alpha, r2) + 2.0 * std::exp(-r2);
  };
  auto gauss = [](Point p, double) {
    return std::exp(-(p.x * p.x + p.y * p.y));
  };
  bench.data.g_exterior = gauss;
  bench.data.g_boundary = gauss;
  bench.exact = [](Point p) { return std::exp(-(p.x * p.x + p.y * p.y)); };
  return bench;
}

Benchmark make_diffusion_hole(double alpha) {
  require_alpha(alpha);
  Benchmark bench;
  bench.id = "diffusion_hole";
  bench.domain = Domain::rectangle_with_hole(
      Point{-2.0, -2.0}, Point{2.0, 2.0}, Point{0.5, 0.5}, Point{1.5, 1.5});
  bench.spec = OperatorSpec{2, alpha, 0.5, 0.0};
  bench.data.u0 = [](Point p) {
    const double r2 = p.x * p.x + p.y * p.y;
    return 3.0 * std::exp(-10.0 * r2 * r2);
  };
  bench.time_dependent = true;
  return bench;
}

Benchmark make_heat_stripe(double alpha, double x_c) {
  require_alpha(alpha);
  Benchmark bench;
  bench.id = "heat_stripe";
  bench.domain = Domain::rectangle(Point{-1.0, -1.0}, Point{1.0, 1.0});
  bench.spec = OperatorSpec{2, alpha, 1.0, 1.0};
  auto stripe = [x_c](Point p, double) {
    if (p.x < x_c || p.x > x_c + 0.25 || p.y < -1.0 || p.y > 1.0) return 0.0;
    return std::sin(kPi * (p.x - x_c + 0.5)) * std::sin(kPi * (p.y + 1.0) / 2.0);
  };
  bench.data.g_exterior = stripe;
  bench.data.g_boundary = stripe;  // trace of the same source on the edge
  bench.data.g_support = Box{{x_c, -1.0}, {x_c + 0.25, 1.0}};
  bench.data.u0 = [](Point) { return 0.0; };  // heating starts from rest
  bench.time_dependent = true;
  return bench;
}

Benchmark benchmark_data(const std::string& id, double alpha, int s,
                         double x_c) {
  if (id == "poisson1d_hom") return make_poisson1d_hom(alpha, s);
  if (id == "poisson1d_sinc") return make_poisson1d_sinc(alpha);
  if (id == "elliptic_lshape") return make_elliptic_lshape(alpha);
  if (id == "diffusion_hole") return make_diffusion_hole(alpha);
  if (id == "heat_stripe") return make_heat_stripe(alpha, x_c);
  throw std::invalid_argument("unknown benchmark id: " + id);
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number for " + key + ": " + value);
  }
  if (used != value.size())
    throw std::invalid_argument("config: bad number for " + key + ": " + value);
  return v;
}

long long parse_int(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(value, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer for " + key + ": " + value);
  }
  if (used != value.size())
    throw std::invalid_argument("config: bad integer for " + key + ": " + value);
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "no") return false;
  throw std::invalid_argument("config: bad boolean for " + key + ": " + value);
}

std::vector<int> parse_int_list(const std::string& key,
                                const std::string& value) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= value.size()) {
    const auto comma = value.find(',', pos);
    const std::string item =
        trim(value.substr(pos, comma == std::string::npos ? std::string::npos
                                                          : comma - pos));
    if (!item.empty()) out.push_back(static_cast<int>(parse_int(key, item)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty())
    throw std::invalid_argument("config: empty list for " + key);
  return out;
}

ShapeKind parse_shape(const std::string& value) {
  if (value == "constant") return ShapeKind::Constant;
  if (value == "cond_indicated") return ShapeKind::CondIndicated;
  if (value == "random_perturbed") return ShapeKind::RandomPerturbed;
  throw std::invalid_argument("config: unknown shape strategy: " + value);
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string line =
        text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    if (key == "benchmark") cfg.benchmark = value;
    else if (key == "alpha") cfg.alpha = parse_double(key, value);
    else if (key == "s") cfg.s = static_cast<int>(parse_int(key, value));
    else if (key == "x_c") cfg.x_c = parse_double(key, value);
    else if (key == "n_bars") cfg.n_bars = parse_int_list(key, value);
    else if (key == "shape") cfg.shape = parse_shape(value);
    else if (key == "eps") cfg.eps = parse_double(key, value);
    else if (key == "eps_min") cfg.eps_min = parse_double(key, value);
    else if (key == "eps_max") cfg.eps_max = parse_double(key, value);
    else if (key == "seed")
      cfg.seed = static_cast<std::uint64_t>(parse_int(key, value));
    else if (key == "quad_tol") cfg.quad_tol = parse_double(key, value);
    else if (key == "tau") cfg.tau = parse_double(key, value);
    else if (key == "t_end") cfg.t_end = parse_double(key, value);
    else if (key == "threads") cfg.threads = static_cast<int>(parse_int(key, value));
    else if (key == "out_dir") cfg.out_dir = value;
    else if (key == "dump_matrices") cfg.dump_matrices = parse_bool(key, value);
    else if (key == "snapshot") cfg.snapshot = parse_bool(key, value);
    else if (key == "sweep_eps_start") cfg.sweep_eps_start = parse_double(key, value);
    else if (key == "sweep_eps_stop") cfg.sweep_eps_stop = parse_double(key, value);
    else if (key == "sweep_eps_step") cfg.sweep_eps_step = parse_double(key, value);
    else
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": unknown key: " + key);
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_config_text(text);
}

QuadConfig quad_config_for(const ExperimentConfig& cfg, int dim) {
  QuadConfig q = QuadConfig::defaults(dim);
  if (cfg.quad_tol > 0.0) q.rel_tol = cfg.quad_tol;
  return q;
}

std::vector<Point> eval_points_1d(const Domain& domain, int count) {
  if (count < 2) throw std::invalid_argument("eval_points_1d: count < 2");
  const double a = domain.lo()[0], b = domain.hi()[0];
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double x = i == count - 1 ? b : a + (b - a) * i / (count - 1);
    pts.push_back(Point{x, 0.0});
  }
  return pts;
}

std::vector<Point> eval_grid_closure_2d(const Domain& domain, int per_axis) {
  if (per_axis < 2) throw std::invalid_argument("eval_grid_closure_2d: grid too small");
  const Box bb = domain.bounding_box();
  std::vector<Point> pts;
  for (int j = 0; j < per_axis; ++j) {
    const double y = j == per_axis - 1
                         ? bb.hi[1]
                         : bb.lo[1] + (bb.hi[1] - bb.lo[1]) * j / (per_axis - 1);
    for (int i = 0; i < per_axis; ++i) {
      const double x = i == per_axis - 1
                           ? bb.hi[0]
                           : bb.lo[0] + (bb.hi[0] - bb.lo[0]) * i / (per_axis - 1);
      const Point p{x, y};
      if (domain.classify(p) != Region::Exterior) pts.push_back(p);
    }
  }
  return pts;
}

NormGrid norm_grid_2d(const Domain& domain, int per_axis) {
  if (per_axis < 1) throw std::invalid_argument("norm_grid_2d: grid too small");
  const Box bb = domain.bounding_box();
  const double hx = (bb.hi[0] - bb.lo[0]) / per_axis;
  const double hy = (bb.hi[1] - bb.lo[1]) / per_axis;
  NormGrid grid;
  grid.cell_area = hx * hy;
  for (int j = 0; j < per_axis; ++j) {
    const double y = bb.lo[1] + (j + 0.5) * hy;
    for (int i = 0; i < per_axis; ++i) {
      const Point p{bb.lo[0] + (i + 0.5) * hx, y};
      if (domain.classify(p) == Region::Interior) grid.centers.push_back(p);
    }
  }
  return grid;
}

double rms_against_exact(const Benchmark& bench, const PointSet& points,
                         const Eigen::VectorXd& lambda) {
  if (!bench.exact)
    throw std::invalid_argument("rms_against_exact: benchmark has no exact solution");
  const std::vector<Point> eval_pts =
      bench.domain.dim() == 1 ? eval_points_1d(bench.domain)
                              : eval_grid_closure_2d(bench.domain);
  const Eigen::VectorXd numeric = evaluate_solution(points, lambda, eval_pts);
  Eigen::VectorXd truth(static_cast<Eigen::Index>(eval_pts.size()));
  for (std::size_t i = 0; i < eval_pts.size(); ++i)
    truth[static_cast<Eigen::Index>(i)] = bench.exact(eval_pts[i]);
  return rms_error(numeric, truth);
}

namespace {

std::string sanitize(std::string msg) {
  std::replace(msg.begin(), msg.end(), ',', ';');
  std::replace(msg.begin(), msg.end(), '\n', ' ');
  return msg;
}

std::ofstream open_csv(const std::string& dir, const std::string& name,
                       const char* header) {
  std::filesystem::create_directories(dir);
  const std::string path = dir + "/" + name;
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << header << '\n';
  return out;
}

void write_run_row(std::ofstream& out, const RunRow& row) {
  using detail::format_double;
  if (row.failed) {
    out << "FAILED," << format_double(row.alpha) << ',' << row.n_bar << ','
        << sanitize(row.message) << '\n';
  } else {
    out << format_double(row.alpha) << ',' << row.n_bar << ',' << row.eps_desc
        << ',' << format_double(row.rms) << ',' << format_double(row.cond2)
        << ',' << format_double(row.wall_time) << '\n';
  }
  out.flush();
}

constexpr const char* kSteadyHeader = "alpha,n_bar,eps,rms,cond2,wall_time";

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// Assembles, solves, and scores one steady configuration. Shape strategy and
// quadrature settings come from cfg; the benchmark supplies everything else.
RunRow steady_row(const Benchmark& bench, int n_bar_target,
                  const ExperimentConfig& cfg) {
  RunRow row;
  row.alpha = bench.spec.alpha;
  row.n_bar = n_bar_target;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const QuadConfig qcfg = quad_config_for(cfg, bench.domain.dim());
    const int res = resolution_for_count(bench.domain, n_bar_target);
    PointSet base = uniform_points(bench.domain, res);
    row.n_bar = base.n_bar();

    PointSet ps = base;
    switch (cfg.shape) {
      case ShapeKind::Constant:
        ps = assign_constant(base, cfg.eps);
        row.eps_desc = detail::format_double(cfg.eps);
        break;
      case ShapeKind::RandomPerturbed:
        ps = assign_random_perturbed(base, cfg.eps_min, cfg.eps_max, cfg.seed);
        row.eps_desc = "random[" + detail::format_double(cfg.eps_min) + ":" +
                       detail::format_double(cfg.eps_max) + "]seed" +
                       std::to_string(cfg.seed);
        break;
      case ShapeKind::CondIndicated: {
        auto assemble = [&](double eps) {
          PointSet trial = assign_constant(base, eps);
          CollocationSystem sys;
          sys.phi = build_phi(trial);
          sys.a_mat = build_a(trial, bench.domain, bench.spec, qcfg, cfg.threads);
          sys.m = trial.m;
          sys.n_bar = trial.n_bar();
          return stacked_steady_matrix(sys, bench.spec);
        };
        const CondSearchResult found =
            search_cond_indicated(assemble, CondIndicated{});
        ps = assign_constant(base, found.eps);
        row.eps_desc = "cond_indicated:" + detail::format_double(found.eps);
        break;
      }
    }

    CollocationSystem sys;
    sys.phi = build_phi(ps);
    sys.a_mat = build_a(ps, bench.domain, bench.spec, qcfg, cfg.threads);
    sys.m = ps.m;
    sys.n_bar = ps.n_bar();
    const Eigen::VectorXd b =
        build_b(ps, bench.domain, bench.spec, bench.data, 0.0, qcfg, cfg.threads);
    const Eigen::VectorXd g = build_g_vec(ps, bench.data, 0.0);
    bool warn = false;
    const Eigen::VectorXd lambda = solve_steady(sys, bench.spec, b, g, &warn);
    row.cond2 = condition_number_2(stacked_steady_matrix(sys, bench.spec));
    row.rms = bench.exact
                  ? rms_against_exact(bench, ps, lambda)
                  : std::numeric_limits<double>::quiet_NaN();
    if (warn) row.message = "residual above tolerance";
    if (cfg.dump_matrices) {
      const std::string stem = cfg.out_dir + "/" + bench.id + "_n" +
                               std::to_string(ps.n_bar());
      write_matrix_dump(stem + "_a.bin", sys.a_mat, bench.spec.d, ps.m,
                        ps.n_bar());
      write_matrix_dump(stem + "_phi.bin", sys.phi, bench.spec.d, ps.m,
                        ps.n_bar());
    }
  } catch (const std::exception& e) {
    row.failed = true;
    row.message = e.what();
    std::fprintf(stderr, "FAILED %s alpha=%g n_bar=%d: %s\n",
                 bench.id.c_str(), row.alpha, row.n_bar, e.what());
  }
  row.wall_time = seconds_since(t0);
  return row;
}

}  // namespace

std::vector<RunRow> run_steady(const ExperimentConfig& cfg,
                               const std::string& csv_name) {
  const Benchmark bench = benchmark_data(cfg.benchmark, cfg.alpha, cfg.s, cfg.x_c);
  if (bench.time_dependent)
    throw std::invalid_argument("run_steady: " + bench.id +
                                " is time dependent; use the diffuse driver");
  if (cfg.n_bars.empty())
    throw std::invalid_argument("run_steady: n_bars is empty");
  const std::string name =
      csv_name.empty() ? "run_" + bench.id + ".csv" : csv_name;
  std::ofstream csv = open_csv(cfg.out_dir, name, kSteadyHeader);
  std::vector<RunRow> rows;
  for (int target : cfg.n_bars) {
    rows.push_back(steady_row(bench, target, cfg));
    write_run_row(csv, rows.back());
  }
  return rows;
}

std::vector<RunRow> run_sweep_eps(const ExperimentConfig& cfg) {
  const Benchmark bench = benchmark_data(cfg.benchmark, cfg.alpha, cfg.s, cfg.x_c);
  if (bench.time_dependent)
    throw std::invalid_argument("run_sweep_eps: benchmark is time dependent");
  if (cfg.n_bars.empty())
    throw std::invalid_argument("run_sweep_eps: n_bars is empty");
  if (!(cfg.sweep_eps_step > 0.0) || cfg.sweep_eps_stop < cfg.sweep_eps_start)
    throw std::invalid_argument("run_sweep_eps: bad eps range");
  const int target = cfg.n_bars.front();
  std::ofstream csv = open_csv(
      cfg.out_dir, "sweep_" + bench.id + "_n" + std::to_string(target) + ".csv",
      kSteadyHeader);
  std::vector<RunRow> rows;
  ExperimentConfig point = cfg;
  point.shape = ShapeKind::Constant;
  const int count = static_cast<int>(
      std::floor((cfg.sweep_eps_stop - cfg.sweep_eps_start) / cfg.sweep_eps_step +
                 1e-9)) + 1;
  for (int i = 0; i < count; ++i) {
    point.eps = cfg.sweep_eps_start + i * cfg.sweep_eps_step;
    rows.push_back(steady_row(bench, target, point));
    write_run_row(csv, rows.back());
  }
  return rows;
}

std::vector<RunRow> run_table1(const ExperimentConfig& base) {
  const std::pair<double, double> cases[] = {
      {0.6, 3.0}, {1.0, 3.5}, {1.5, 3.5}, {2.0, 3.5}};
  const int ladder[] = {5, 9, 17, 33, 65};
  std::ofstream csv = open_csv(base.out_dir, "table1.csv", kSteadyHeader);
  std::vector<RunRow> rows;
  for (const auto& [alpha, eps] : cases) {
    const Benchmark bench = make_poisson1d_hom(alpha, 3);
    ExperimentConfig cfg = base;
    cfg.shape = ShapeKind::Constant;
    cfg.eps = eps;
    for (int target : ladder) {
      rows.push_back(steady_row(bench, target, cfg));
      write_run_row(csv, rows.back());
    }
  }
  return rows;
}

std::vector<RunRow> run_table2(const ExperimentConfig& base) {
  const Benchmark bench = make_poisson1d_sinc(1.0);
  const int ladder[] = {5, 9, 17, 33, 65};
  std::ofstream csv = open_csv(base.out_dir, "table2.csv", kSteadyHeader);
  std::vector<RunRow> rows;
  ExperimentConfig cfg = base;
  cfg.shape = ShapeKind::Constant;
  cfg.eps = 1.0;
  for (int target : ladder) {
    rows.push_back(steady_row(bench, target, cfg));
    write_run_row(csv, rows.back());
  }
  return rows;
}

std::vector<RunRow> run_table3(const ExperimentConfig& base) {
  const double alphas[] = {0.6, 1.0, 1.5, 2.0};
  const int ladder[] = {21, 65, 133, 225, 341};
  std::ofstream csv = open_csv(base.out_dir, "table3.csv", kSteadyHeader);
  std::vector<RunRow> rows;
  for (double alpha : alphas) {
    const Benchmark bench = make_elliptic_lshape(alpha);
    ExperimentConfig cfg = base;
    cfg.shape = ShapeKind::RandomPerturbed;
    cfg.eps_min = 0.1;
    cfg.eps_max = 4.0;
    for (int target : ladder) {
      rows.push_back(steady_row(bench, target, cfg));
      write_run_row(csv, rows.back());
    }
  }
  return rows;
}

DiffusionResult run_diffusion(const ExperimentConfig& cfg) {
  const Benchmark bench = benchmark_data(cfg.benchmark, cfg.alpha, cfg.s, cfg.x_c);
  if (!bench.time_dependent)
    throw std::invalid_argument("run_diffusion: " + bench.id + " is steady");
  if (cfg.n_bars.empty())
    throw std::invalid_argument("run_diffusion: n_bars is empty");
  if (!(cfg.tau > 0.0) || !(cfg.t_end > 0.0))
    throw std::invalid_argument("run_diffusion: tau and t_end must be positive");

  std::ofstream csv = open_csv(cfg.out_dir, "diffuse_" + bench.id + ".csv",
                               "t,u_norm2,u_max_abs");
  DiffusionResult result;
  try {
    const QuadConfig qcfg = quad_config_for(cfg, bench.domain.dim());
    const int res = resolution_for_count(bench.domain, cfg.n_bars.front());
    PointSet ps = uniform_points(bench.domain, res);
    switch (cfg.shape) {
      case ShapeKind::Constant:
        ps = assign_constant(ps, cfg.eps);
        break;
      case ShapeKind::RandomPerturbed:
        ps = assign_random_perturbed(ps, cfg.eps_min, cfg.eps_max, cfg.seed);
        break;
      case ShapeKind::CondIndicated:
        throw std::invalid_argument(
            "run_diffusion: cond_indicated shape is not supported here");
    }

    CollocationSystem sys;
    sys.phi = build_phi(ps);
    sys.a_mat = build_a(ps, bench.domain, bench.spec, qcfg, cfg.threads);
    sys.m = ps.m;
    sys.n_bar = ps.n_bar();

    const int steps = static_cast<int>(std::llround(cfg.t_end / cfg.tau));
    const std::vector<Eigen::VectorXd> levels =
        cn_evolve(sys, ps, bench.domain, bench.spec, bench.data, cfg.tau, steps,
                  qcfg, cfg.threads);

    const NormGrid ng = norm_grid_2d(bench.domain);
    const std::vector<Point> closure = eval_grid_closure_2d(bench.domain);
    PointSet centers_only = ps;  // evaluation needs the centers and shapes only
    const Eigen::MatrixXd e_norm = build_phi_at(ng.centers, centers_only);
    const Eigen::MatrixXd e_max = build_phi_at(closure, centers_only);

    result.series.reserve(levels.size());
    for (std::size_t n = 0; n < levels.size(); ++n) {
      const Eigen::VectorXd u_in = e_norm * levels[n];
      const Eigen::VectorXd u_cl = e_max * levels[n];
      DiffusionRow row;
      row.t = static_cast<double>(n) * cfg.tau;
      row.norm2 = std::sqrt(u_in.squaredNorm() * ng.cell_area);
      row.max_abs = u_cl.cwiseAbs().maxCoeff();
      result.series.push_back(row);
      csv << detail::format_double(row.t) << ','
          << detail::format_double(row.norm2) << ','
          << detail::format_double(row.max_abs) << '\n';
    }
    csv.flush();

    if (cfg.snapshot) {
      std::ofstream snap = open_csv(cfg.out_dir, "snapshot_" + bench.id + ".csv",
                                    "x,y,u");
      const Eigen::VectorXd u_final = e_max * levels.back();
      for (std::size_t i = 0; i < closure.size(); ++i)
        snap << detail::format_double(closure[i].x) << ','
             << detail::format_double(closure[i].y) << ','
             << detail::format_double(u_final[static_cast<Eigen::Index>(i)])
             << '\n';
    }
  } catch (const std::exception& e) {
    result.failed = true;
    result.message = e.what();
    csv << "FAILED," << sanitize(result.message) << ",\n";
    csv.flush();
    std::fprintf(stderr, "FAILED %s: %s\n", bench.id.c_str(), e.what());
  }
  return result;
}

int run_experiment(const ExperimentConfig& cfg) {
  const Benchmark bench = benchmark_data(cfg.benchmark, cfg.alpha, cfg.s, cfg.x_c);
  if (bench.time_dependent) {
    const DiffusionResult res = run_diffusion(cfg);
    return res.failed ? 1 : 0;
  }
  const std::vector<RunRow> rows = run_steady(cfg);
  int failures = 0;
  for (const RunRow& row : rows)
    if (row.failed) ++failures;
  return failures;
}

}  // namespace gimq
