// Python bindings for the main operations: basis construction, projections,
// Riccati solves, the guidance optimizer, and the benchmark drivers.

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>

#include "mobipde/bench.hpp"
#include "mobipde/config.hpp"

namespace py = pybind11;
using namespace mobipde;

namespace {

BoundaryCondition bc_from_string(const std::string& name) {
  if (name == "dirichlet") return BoundaryCondition::Dirichlet;
  if (name == "neumann") return BoundaryCondition::Neumann;
  throw std::invalid_argument("bc must be 'dirichlet' or 'neumann'");
}

InputTrajectory constant_input(const Eigen::MatrixXd& b, const TimeGrid& grid) {
  InputTrajectory input;
  input.grid = grid;
  input.input.assign(grid.half_count(), b);
  return input;
}

py::dict cost_dict(const CostBreakdown& cost) {
  py::dict d;
  d["pde_cost"] = cost.pde_cost;
  d["mobility_cost"] = cost.mobility_cost;
  d["total"] = cost.total;
  if (cost.normalized_percent) {
    d["normalized_percent"] = *cost.normalized_percent;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_mobipde, m) {
  m.doc() = "Jointly optimal mobile-actuator guidance and LQR control of a "
            "2D diffusion-advection process";

  py::class_<BasisSet, std::shared_ptr<BasisSet>>(m, "Basis")
      .def(py::init([](const std::string& bc, int n, int quad_points) {
             return std::make_shared<BasisSet>(
                 BasisSet::build(bc_from_string(bc), n, quad_points));
           }),
           py::arg("bc"), py::arg("n_modes"), py::arg("quad_points") = 0)
      .def_property_readonly("dim", &BasisSet::dim)
      .def_property_readonly("n_modes", &BasisSet::modes_per_axis)
      .def_property_readonly("gram_defect", &BasisSet::gram_defect)
      .def_property_readonly(
          "bc", [](const BasisSet& b) { return std::string(to_string(b.bc())); })
      .def("flat_index", &BasisSet::flat_index, py::arg("i"), py::arg("j"))
      .def("axis_indices", &BasisSet::axis_indices, py::arg("k"))
      .def("laplacian_eigenvalue", &BasisSet::laplacian_eigenvalue,
           py::arg("k"))
      .def("evaluate", &BasisSet::evaluate, py::arg("k"), py::arg("x"),
           py::arg("y"))
      .def(
          "project",
          [](const BasisSet& basis, const std::function<double(double, double)>& f) {
            return project_field(f, basis);
          },
          py::arg("field"), "Projection coefficients <f, phi_k> by quadrature")
      .def(
          "evaluate_field",
          [](const BasisSet& basis, const CoefficientVector& coeffs, double x,
             double y) { return evaluate_field(coeffs, basis, x, y); },
          py::arg("coeffs"), py::arg("x"), py::arg("y"));

  m.def(
      "transport_matrix",
      [](const BasisSet& basis, double diffusivity,
         const Eigen::Vector2d& velocity) {
        return assemble_transport(basis, diffusivity, velocity);
      },
      py::arg("basis"), py::arg("diffusivity"), py::arg("velocity"),
      "Galerkin matrix of a*lap - v.grad");

  m.def(
      "project_gaussian",
      [](const BasisSet& basis, const Eigen::Vector2d& center, double sigma,
         int box_points) {
        return project_kernel(GaussianKernel(sigma, center), basis,
                              box_points);
      },
      py::arg("basis"), py::arg("center"), py::arg("sigma") = 0.05,
      py::arg("box_points") = 12,
      "Projection of the truncated Gaussian actuation kernel");

  m.def(
      "solve_riccati_constant",
      [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
         const Eigen::MatrixXd& q, const Eigen::MatrixXd& qf,
         const Eigen::MatrixXd& r, double t_f, int steps) {
        LQRWeights weights{q, qf, r};
        const auto sol = solve_riccati(
            a, constant_input(b, TimeGrid::uniform(t_f, steps)), weights);
        return sol.pi0;
      },
      py::arg("a"), py::arg("b"), py::arg("q"), py::arg("qf"), py::arg("r"),
      py::arg("t_f") = 1.0, py::arg("steps") = 1000,
      "Pi(0) of the backward differential Riccati equation with a "
      "time-invariant input matrix");

  py::class_<ScenarioConfig>(m, "Config")
      .def(py::init([](const std::string& preset) {
             return ScenarioConfig::preset_config(preset);
           }),
           py::arg("preset") = "dirichlet-paper")
      .def_static("from_file", &load_config, py::arg("path"))
      .def_static("from_string", &parse_config, py::arg("text"),
                  py::arg("origin") = std::string("<string>"))
      .def_readwrite("n_modes", &ScenarioConfig::n_modes)
      .def_readwrite("grid_steps", &ScenarioConfig::grid_steps)
      .def_readwrite("t_f", &ScenarioConfig::t_f)
      .def_readwrite("disturbance", &ScenarioConfig::disturbance)
      .def_property(
          "bc",
          [](const ScenarioConfig& c) { return std::string(to_string(c.bc)); },
          [](ScenarioConfig& c, const std::string& bc) {
            c.bc = bc_from_string(bc);
          })
      .def_property(
          "max_iters",
          [](const ScenarioConfig& c) { return c.optimizer.max_iters; },
          [](ScenarioConfig& c, int v) { c.optimizer.max_iters = v; })
      .def_property(
          "optimizer_grid_steps",
          [](const ScenarioConfig& c) { return c.optimizer.grid_steps; },
          [](ScenarioConfig& c, int v) { c.optimizer.grid_steps = v; })
      .def("validate", &ScenarioConfig::validate)
      .def("serialize", &ScenarioConfig::serialize)
      .def("hash", &ScenarioConfig::hash)
      .def("__repr__", [](const ScenarioConfig& c) {
        return "<mobipde.Config bc=" + std::string(to_string(c.bc)) +
               " n_modes=" + std::to_string(c.n_modes) + ">";
      });

  m.def(
      "solve_optimal",
      [](const ScenarioConfig& config) {
        const Scenario scenario = build_scenario(config);
        const OptimalSolution opt = prepare_optimal(scenario);
        py::dict d;
        d["cost"] = cost_dict(opt.raw.cost);
        d["iterations"] = opt.raw.state.iterations;
        d["stalled"] = opt.raw.state.stalled;
        d["gradient_norm"] = opt.raw.state.gradient_norm;
        d["cost_history"] = opt.raw.state.cost_history;
        d["guidance"] = opt.guidance.values;
        d["trajectory"] = opt.trajectory.states;
        d["control_half"] = opt.open_loop.values_half;
        return d;
      },
      py::arg("config"),
      "Optimize guidance and control; arrays are sampled on the simulation "
      "grid");

  m.def(
      "bench_table",
      [](const ScenarioConfig& config) {
        const Scenario scenario = build_scenario(config);
        const OptimalSolution opt = prepare_optimal(scenario);
        const StrategyTable table = strategy_table(scenario, opt);
        py::list rows;
        for (const auto& row : table.rows) {
          py::dict d = cost_dict(row.cost);
          d["strategy"] = std::string(to_string(row.strategy));
          d["norm_history"] = row.sim.norm_history;
          rows.append(d);
        }
        py::dict out;
        out["rows"] = rows;
        out["ordering_ok"] = table.ordering_ok;
        return out;
      },
      py::arg("config"), "Five-strategy cost comparison table");

  m.def(
      "convergence",
      [](const ScenarioConfig& config, int n_low, int n_high,
         bool warm_start) {
        const auto report =
            convergence_study(config, n_low, n_high, warm_start);
        py::list rows;
        for (const auto& e : report.entries) {
          py::dict d;
          d["n_modes"] = e.n_modes;
          d["pde_cost"] = e.pde_cost;
          d["mobility_cost"] = e.mobility_cost;
          d["total"] = e.total;
          d["normalized_percent"] = e.normalized_percent;
          d["iterations"] = e.iterations;
          rows.append(d);
        }
        return rows;
      },
      py::arg("config"), py::arg("n_low"), py::arg("n_high"),
      py::arg("warm_start") = true,
      "Optimal cost per Galerkin dimension, normalized to the largest N");

  m.attr("__version__") = "0.1.0";
}
