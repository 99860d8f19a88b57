#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gimqlap/assembly.hpp"
#include "gimqlap/bench.hpp"
#include "gimqlap/errors.hpp"
#include "gimqlap/extquad.hpp"
#include "gimqlap/geometry.hpp"
#include "gimqlap/kernel.hpp"
#include "gimqlap/shapeparam.hpp"
#include "gimqlap/solver.hpp"
#include "gimqlap/specfun.hpp"

namespace py = pybind11;
using namespace gimq;

PYBIND11_MODULE(_gimqlap, m) {
  m.doc() = "meshless collocation for the fractional Laplacian with "
            "generalized inverse multiquadric kernels";

  py::class_<Point>(m, "Point")
      .def(py::init<double, double>(), py::arg("x"), py::arg("y") = 0.0)
      .def_readwrite("x", &Point::x)
      .def_readwrite("y", &Point::y)
      .def("__repr__", [](const Point& p) {
        return "Point(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
      });

  py::class_<Box>(m, "Box")
      .def(py::init([](double ax, double ay, double bx, double by) {
             return Box{{ax, ay}, {bx, by}};
           }),
           py::arg("lo_x"), py::arg("lo_y"), py::arg("hi_x"), py::arg("hi_y"));

  py::enum_<Region>(m, "Region")
      .value("Interior", Region::Interior)
      .value("Boundary", Region::Boundary)
      .value("Exterior", Region::Exterior);

  py::class_<Domain>(m, "Domain")
      .def_static("interval", &Domain::interval, py::arg("a"), py::arg("b"))
      .def_static("rectangle", &Domain::rectangle, py::arg("lo"), py::arg("hi"))
      .def_static("lshape", &Domain::lshape, py::arg("lo"), py::arg("hi"),
                  py::arg("corner"))
      .def_static("rectangle_with_hole", &Domain::rectangle_with_hole,
                  py::arg("lo"), py::arg("hi"), py::arg("hole_lo"),
                  py::arg("hole_hi"))
      .def("dim", &Domain::dim)
      .def("classify", &Domain::classify, py::arg("p"),
           py::arg("tol") = 1e-12)
      .def("contains", &Domain::contains)
      .def("on_boundary", &Domain::on_boundary);

  py::class_<PointSet>(m, "PointSet")
      .def_readonly("dim", &PointSet::dim)
      .def_readonly("m", &PointSet::m)
      .def_readonly("pts", &PointSet::pts)
      .def_readonly("shape", &PointSet::shape)
      .def("n_bar", &PointSet::n_bar)
      .def("n_boundary", &PointSet::n_boundary)
      .def("has_shape", &PointSet::has_shape);

  m.def("uniform_points", &uniform_points, py::arg("domain"),
        py::arg("resolution"));
  m.def("count_for_resolution", &count_for_resolution);
  m.def("resolution_for_count", &resolution_for_count);

  m.def("gamma", &gimq::gamma, py::arg("x"));
  m.def("reciprocal_gamma", &gimq::reciprocal_gamma, py::arg("x"));
  m.def("hyp2f1_series", &hyp2f1_series, py::arg("a"), py::arg("b"),
        py::arg("c"), py::arg("z"));
  m.def("hyp2f1_lemma", &hyp2f1_lemma, py::arg("d"), py::arg("alpha"),
        py::arg("z"));
  m.def("hyp1f1_elliptic", &hyp1f1_elliptic, py::arg("alpha"), py::arg("r2"));
  m.def("fraclap_gimq_1d_closed", &fraclap_gimq_1d_closed, py::arg("alpha"),
        py::arg("x"));
  m.def("fraclap_gimq_3d_closed", &fraclap_gimq_3d_closed, py::arg("alpha"),
        py::arg("r"));

  py::class_<OperatorSpec>(m, "OperatorSpec")
      .def(py::init([](int d, double alpha, double kappa, double reaction) {
             return OperatorSpec{d, alpha, kappa, reaction};
           }),
           py::arg("d"), py::arg("alpha"), py::arg("kappa") = 1.0,
           py::arg("reaction") = 0.0)
      .def_readwrite("d", &OperatorSpec::d)
      .def_readwrite("alpha", &OperatorSpec::alpha)
      .def_readwrite("kappa", &OperatorSpec::kappa)
      .def_readwrite("reaction", &OperatorSpec::reaction)
      .def("zeta", &OperatorSpec::zeta)
      .def("c_lemma", &OperatorSpec::c_lemma)
      .def("c_tail", &OperatorSpec::c_tail);

  m.def("gimq_eval", &gimq_eval, py::arg("d"), py::arg("eps"), py::arg("r"));
  m.def("gimq_fraclap", &gimq_fraclap, py::arg("spec"), py::arg("eps"),
        py::arg("r"));
  m.def("gimq_classical_lap", &gimq_classical_lap, py::arg("d"),
        py::arg("eps"), py::arg("r"));

  py::class_<QuadConfig>(m, "QuadConfig")
      .def(py::init<>())
      .def_static("defaults", &QuadConfig::defaults, py::arg("dim"))
      .def_readwrite("rel_tol", &QuadConfig::rel_tol)
      .def_readwrite("abs_tol", &QuadConfig::abs_tol)
      .def_readwrite("max_subdivisions", &QuadConfig::max_subdivisions);

  m.def("kernel_tail_integral", &kernel_tail_integral, py::arg("domain"),
        py::arg("xk"), py::arg("xi"), py::arg("eps_i"), py::arg("spec"),
        py::arg("cfg"));
  m.def(
      "boundary_data_integral",
      [](const Domain& domain, Point xk,
         const std::function<double(Point, double)>& g, double t,
         const OperatorSpec& spec, const QuadConfig& cfg) {
        return boundary_data_integral(domain, xk, g, t, spec, cfg);
      },
      py::arg("domain"), py::arg("xk"), py::arg("g"), py::arg("t"),
      py::arg("spec"), py::arg("cfg"));

  m.def("assign_constant", &assign_constant, py::arg("points"), py::arg("eps"));
  m.def("assign_random_perturbed", &assign_random_perturbed, py::arg("points"),
        py::arg("eps_min"), py::arg("eps_max"), py::arg("seed"));
  m.def(
      "search_cond_indicated",
      [](const std::function<Eigen::MatrixXd(double)>& assemble) {
        const CondSearchResult r = search_cond_indicated(assemble, CondIndicated{});
        return py::make_tuple(r.eps, r.cond2);
      },
      py::arg("assemble"));

  py::class_<CollocationSystem>(m, "CollocationSystem")
      .def(py::init<>())
      .def_readwrite("phi", &CollocationSystem::phi)
      .def_readwrite("a_mat", &CollocationSystem::a_mat)
      .def_readwrite("m", &CollocationSystem::m)
      .def_readwrite("n_bar", &CollocationSystem::n_bar);

  m.def("build_phi", &build_phi, py::arg("points"));
  m.def("build_phi_at", &build_phi_at, py::arg("test_points"),
        py::arg("centers"));
  m.def("build_a", &build_a, py::arg("points"), py::arg("domain"),
        py::arg("spec"), py::arg("cfg"), py::arg("threads") = 1);
  m.def("stacked_steady_matrix", &stacked_steady_matrix, py::arg("system"),
        py::arg("spec"));
  m.def(
      "solve_steady",
      [](const CollocationSystem& sys, const OperatorSpec& spec,
         const Eigen::VectorXd& b, const Eigen::VectorXd& g) {
        bool warn = false;
        Eigen::VectorXd lambda = solve_steady(sys, spec, b, g, &warn);
        return py::make_tuple(lambda, warn);
      },
      py::arg("system"), py::arg("spec"), py::arg("b"), py::arg("g"));
  m.def("initial_coeffs", &initial_coeffs, py::arg("phi"),
        py::arg("u0_values"));
  m.def("evaluate_solution", &evaluate_solution, py::arg("points"),
        py::arg("lambda"), py::arg("eval_points"));
  m.def("rms_error", &rms_error, py::arg("numeric"), py::arg("exact"));
  m.def("condition_number_2", &condition_number_2, py::arg("mat"));

  py::class_<Benchmark>(m, "Benchmark")
      .def_readonly("id", &Benchmark::id)
      .def_readonly("domain", &Benchmark::domain)
      .def_readonly("spec", &Benchmark::spec)
      .def_readonly("time_dependent", &Benchmark::time_dependent)
      .def("exact_at",
           [](const Benchmark& b, Point p) {
             if (!b.exact)
               throw std::invalid_argument("benchmark has no exact solution");
             return b.exact(p);
           })
      .def("forcing_at",
           [](const Benchmark& b, Point p, double t) {
             if (!b.data.f)
               throw std::invalid_argument("benchmark has no forcing term");
             return b.data.f(p, t);
           },
           py::arg("p"), py::arg("t") = 0.0)
      .def("exterior_data_at",
           [](const Benchmark& b, Point p, double t) {
             return b.data.g_exterior ? b.data.g_exterior(p, t) : 0.0;
           },
           py::arg("p"), py::arg("t") = 0.0);

  m.def("benchmark_data", &benchmark_data, py::arg("id"), py::arg("alpha"),
        py::arg("s") = 3, py::arg("x_c") = 1.0);

  py::enum_<ShapeKind>(m, "ShapeKind")
      .value("Constant", ShapeKind::Constant)
      .value("CondIndicated", ShapeKind::CondIndicated)
      .value("RandomPerturbed", ShapeKind::RandomPerturbed);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("benchmark", &ExperimentConfig::benchmark)
      .def_readwrite("alpha", &ExperimentConfig::alpha)
      .def_readwrite("s", &ExperimentConfig::s)
      .def_readwrite("x_c", &ExperimentConfig::x_c)
      .def_readwrite("n_bars", &ExperimentConfig::n_bars)
      .def_readwrite("shape", &ExperimentConfig::shape)
      .def_readwrite("eps", &ExperimentConfig::eps)
      .def_readwrite("eps_min", &ExperimentConfig::eps_min)
      .def_readwrite("eps_max", &ExperimentConfig::eps_max)
      .def_readwrite("seed", &ExperimentConfig::seed)
      .def_readwrite("quad_tol", &ExperimentConfig::quad_tol)
      .def_readwrite("tau", &ExperimentConfig::tau)
      .def_readwrite("t_end", &ExperimentConfig::t_end)
      .def_readwrite("threads", &ExperimentConfig::threads)
      .def_readwrite("out_dir", &ExperimentConfig::out_dir)
      .def_readwrite("dump_matrices", &ExperimentConfig::dump_matrices)
      .def_readwrite("snapshot", &ExperimentConfig::snapshot)
      .def_readwrite("sweep_eps_start", &ExperimentConfig::sweep_eps_start)
      .def_readwrite("sweep_eps_stop", &ExperimentConfig::sweep_eps_stop)
      .def_readwrite("sweep_eps_step", &ExperimentConfig::sweep_eps_step);

  py::class_<RunRow>(m, "RunRow")
      .def_readonly("alpha", &RunRow::alpha)
      .def_readonly("n_bar", &RunRow::n_bar)
      .def_readonly("eps_desc", &RunRow::eps_desc)
      .def_readonly("rms", &RunRow::rms)
      .def_readonly("cond2", &RunRow::cond2)
      .def_readonly("wall_time", &RunRow::wall_time)
      .def_readonly("failed", &RunRow::failed)
      .def_readonly("message", &RunRow::message);

  py::class_<DiffusionRow>(m, "DiffusionRow")
      .def_readonly("t", &DiffusionRow::t)
      .def_readonly("norm2", &DiffusionRow::norm2)
      .def_readonly("max_abs", &DiffusionRow::max_abs);

  py::class_<DiffusionResult>(m, "DiffusionResult")
      .def_readonly("series", &DiffusionResult::series)
      .def_readonly("failed", &DiffusionResult::failed)
      .def_readonly("message", &DiffusionResult::message);

  m.def("parse_config_text", &parse_config_text, py::arg("text"));
  m.def("parse_config_file", &parse_config_file, py::arg("path"));
  m.def("run_steady", &run_steady, py::arg("cfg"), py::arg("csv_name") = "");
  m.def("run_sweep_eps", &run_sweep_eps, py::arg("cfg"));
  m.def("run_diffusion", &run_diffusion, py::arg("cfg"));

  py::register_exception<ConvergenceError>(m, "ConvergenceError");
  py::register_exception<QuadratureError>(m, "QuadratureError");
  py::register_exception<SingularMatrixError>(m, "SingularMatrixError");
  py::register_exception<ShapeSearchError>(m, "ShapeSearchError");
}
