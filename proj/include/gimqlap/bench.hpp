#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "gimqlap/assembly.hpp"
#include "gimqlap/extquad.hpp"
#include "gimqlap/geometry.hpp"
#include "gimqlap/solver.hpp"

namespace gimq {

/// A ready-to-run problem: domain, operator, data, and (when available) the
/// exact solution used for RMS reporting.
struct Benchmark {
  std::string id;
  Domain domain = Domain::interval(-1.0, 1.0);
  OperatorSpec spec;
  ProblemData data;
  std::function<double(Point)> exact;  // null for the qualitative problems
  bool time_dependent = false;
};

/// 1D Poisson on (-1,1), zero exterior data, exact u = (1-x^2)_+^{s+alpha/2};
/// the forcing is a terminating degree-s polynomial in x^2.
Benchmark make_poisson1d_hom(double alpha, int s = 3);

/// 1D Poisson on (-1,1) with nonzero exterior data; exact u = sqrt(2/pi) sin(x)/x.
Benchmark make_poisson1d_sinc(double alpha);

/// Elliptic problem with reaction 2 on the L-shaped domain (-1,1)^2 \ [0,1)^2,
/// exact u = exp(-|x|^2) prescribed on the whole complement.
Benchmark make_elliptic_lshape(double alpha);

/// Diffusion (kappa = 0.5, zero data) on (-2,2)^2 \ [0.5,1.5]^2 with initial
/// bump 3 exp(-10 |x|^4); qualitative.
Benchmark make_diffusion_hole(double alpha);

/// Heat conduction with unit reaction on (-1,1)^2, zero initial state, data
/// supported on the stripe [x_c, x_c + 1/4] x [-1, 1]; qualitative.
Benchmark make_heat_stripe(double alpha, double x_c);

/// Dispatch by benchmark id string (the five ids above).
Benchmark benchmark_data(const std::string& id, double alpha, int s = 3,
                         double x_c = 1.0);

enum class ShapeKind { Constant, CondIndicated, RandomPerturbed };

/// Flat key = value experiment description (see parse_config_text for the
/// accepted keys).
struct ExperimentConfig {
  std::string benchmark = "poisson1d_hom";
  double alpha = 1.0;
  int s = 3;
  double x_c = 1.0;
  std::vector<int> n_bars{33};
  ShapeKind shape = ShapeKind::Constant;
  double eps = 1.0;
  double eps_min = 0.1;
  double eps_max = 4.0;
  std::uint64_t seed = 1;
  double quad_tol = 0.0;  // 0 keeps the per-dimension defaults
  double tau = 0.01;
  double t_end = 1.0;
  int threads = 0;  // 0 = all hardware threads
  std::string out_dir = ".";
  bool dump_matrices = false;
  bool snapshot = false;
  double sweep_eps_start = 0.5;
  double sweep_eps_stop = 8.0;
  double sweep_eps_step = 0.25;
};

/// Parses `key = value` lines ('#' starts a comment); unknown keys are
/// rejected so config typos fail loudly.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/// Quadrature settings for the experiment (per-dimension defaults unless the
/// config overrides the relative tolerance).
QuadConfig quad_config_for(const ExperimentConfig& cfg, int dim);

/// One CSV row of a steady experiment.
struct RunRow {
  double alpha = 0.0;
  int n_bar = 0;
  std::string eps_desc;
  double rms = 0.0;
  double cond2 = 0.0;
  double wall_time = 0.0;
  bool failed = false;
  std::string message;
};

/// One time level of an evolution experiment.
struct DiffusionRow {
  double t = 0.0;
  double norm2 = 0.0;
  double max_abs = 0.0;
};

struct DiffusionResult {
  std::vector<DiffusionRow> series;
  bool failed = false;
  std::string message;
};

/// Steady ladder over cfg.n_bars; writes <out_dir>/<csv_name> and returns the
/// rows. Failed rows carry a FAILED marker in the CSV and a message here.
std::vector<RunRow> run_steady(const ExperimentConfig& cfg,
                               const std::string& csv_name = "");

/// Error-versus-eps curve at fixed n_bar (first entry of cfg.n_bars).
std::vector<RunRow> run_sweep_eps(const ExperimentConfig& cfg);

/// Canned ladders reproducing the headline experiment tables.
std::vector<RunRow> run_table1(const ExperimentConfig& base);
std::vector<RunRow> run_table2(const ExperimentConfig& base);
std::vector<RunRow> run_table3(const ExperimentConfig& base);

/// Crank-Nicolson evolution; writes the (t, norm, max) series CSV.
DiffusionResult run_diffusion(const ExperimentConfig& cfg);

/// Steady-versus-evolution dispatch on the configured benchmark.
int run_experiment(const ExperimentConfig& cfg);

/// Uniform evaluation points: 1000 on the interval in 1D.
std::vector<Point> eval_points_1d(const Domain& domain, int count = 1000);

/// Nodes of a per_axis x per_axis grid over the bounding box, clipped to the
/// domain closure.
std::vector<Point> eval_grid_closure_2d(const Domain& domain, int per_axis = 101);

/// Midpoint-rule cell centers (interior only) with their common cell area.
struct NormGrid {
  std::vector<Point> centers;
  double cell_area = 0.0;
};
NormGrid norm_grid_2d(const Domain& domain, int per_axis = 101);

/// RMS of the expansion against the benchmark's exact solution over the
/// standard evaluation set for the domain dimension.
double rms_against_exact(const Benchmark& bench, const PointSet& points,
                         const Eigen::VectorXd& lambda);

}  // namespace gimq
