// Command line front end: solve / bench / converge / validate.

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "mobipde/bench.hpp"
#include "mobipde/config.hpp"
#include "mobipde/report.hpp"

namespace fs = std::filesystem;
using namespace mobipde;

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_dir = "out";
  std::string bc;
  bool no_disturbance = false;
  int grid_steps = 0;
  int max_iters = 0;
  int n_modes = 0;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "Scenario config file")
      ->envname("MOBIPDE_CONFIG");
  cmd->add_option("--out", opts.out_dir, "Output directory")
      ->envname("MOBIPDE_OUT");
  cmd->add_option("--bc", opts.bc, "Boundary condition")
      ->check(CLI::IsMember({"dirichlet", "neumann"}))
      ->envname("MOBIPDE_BC");
  cmd->add_flag("--no-disturbance", opts.no_disturbance,
                "Disable the mobile disturbance");
  cmd->add_option("--grid-steps", opts.grid_steps,
                  "Simulation grid steps override")
      ->envname("MOBIPDE_GRID_STEPS");
  cmd->add_option("--max-iters", opts.max_iters,
                  "Optimizer iteration override")
      ->envname("MOBIPDE_MAX_ITERS");
  cmd->add_option("--n-modes", opts.n_modes, "Galerkin modes per axis")
      ->envname("MOBIPDE_N_MODES");
}

ScenarioConfig resolve_config(const CommonOptions& opts) {
  ScenarioConfig config = opts.config_path.empty()
                              ? ScenarioConfig{}
                              : load_config(opts.config_path);
  if (opts.bc == "dirichlet") config.bc = BoundaryCondition::Dirichlet;
  if (opts.bc == "neumann") config.bc = BoundaryCondition::Neumann;
  if (opts.no_disturbance) config.disturbance = false;
  if (opts.grid_steps > 0) config.grid_steps = opts.grid_steps;
  if (opts.max_iters > 0) config.optimizer.max_iters = opts.max_iters;
  if (opts.n_modes > 0) config.n_modes = opts.n_modes;
  config.validate();
  return config;
}

std::string out_path(const CommonOptions& opts, const std::string& name) {
  fs::create_directories(opts.out_dir);
  return (fs::path(opts.out_dir) / name).string();
}

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

int cmd_solve(const CommonOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const ScenarioConfig config = resolve_config(opts);
  const Scenario scenario = build_scenario(config);
  const OptimalSolution opt = prepare_optimal(scenario);

  report::write_guidance(opt.guidance, config, out_path(opts, "guidance.csv"));
  report::write_trajectory(opt.trajectory, scenario.fleet, config,
                           out_path(opts, "trajectory.csv"));

  const StrategyRun feedback =
      run_strategy(Strategy::OptFeedback, scenario, &opt);
  report::write_controls(feedback.sim, config, out_path(opts, "control.csv"));

  // After the initial transient the reported optimal controls die out;
  // flag the run when actuation persists into the second half.
  const int half = scenario.sim_grid.node_count() / 2;
  const double peak = feedback.sim.controls.cwiseAbs().maxCoeff();
  const double late = feedback.sim.controls.rightCols(half).cwiseAbs()
                          .maxCoeff();
  const bool ceased = peak == 0.0 || late < 0.1 * peak;

  std::vector<std::string> meta;
  meta.push_back("command: solve");
  meta.push_back("iterations: " +
                 std::to_string(opt.raw.state.iterations));
  meta.push_back("stalled: " + std::string(opt.raw.state.stalled ? "yes"
                                                                 : "no"));
  {
    std::ostringstream os;
    os << std::setprecision(17) << "pde_cost: " << opt.raw.cost.pde_cost
       << "\nmobility_cost: " << opt.raw.cost.mobility_cost
       << "\ntotal_cost: " << opt.raw.cost.total
       << "\ngradient_norm: " << opt.raw.state.gradient_norm
       << "\npeak_control: " << peak << "\nlate_control: " << late
       << "\ncontrol_ceases_after_transient: " << (ceased ? "yes" : "no")
       << "\nwall_seconds: " << elapsed_seconds(t0);
    meta.push_back(os.str());
  }
  report::write_metadata(config, meta, out_path(opts, "metadata.txt"));

  if (!ceased) {
    std::cerr << "warning: optimal control remains active after the "
                 "transient (late/peak = "
              << late / peak << ")\n";
  }
  if (opt.raw.state.stalled) {
    std::cerr << "error: optimizer stalled before reaching the gradient "
                 "tolerance\n";
    return 2;
  }
  std::cout << "solve: total cost " << opt.raw.cost.total << " after "
            << opt.raw.state.iterations << " iterations\n";
  return 0;
}

int cmd_bench(const CommonOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  const ScenarioConfig config = resolve_config(opts);
  const Scenario scenario = build_scenario(config);
  const OptimalSolution opt = prepare_optimal(scenario);
  const StrategyTable table = strategy_table(scenario, opt);

  report::write_strategy_table(table, config, out_path(opts, "table.csv"));
  report::write_norm_histories(table, config,
                               out_path(opts, "norm_history.csv"));
  report::write_controls(table.rows.front().sim, config,
                         out_path(opts, "control.csv"));
  report::write_trajectory(opt.trajectory, scenario.fleet, config,
                           out_path(opts, "trajectory.csv"));
  report::write_guidance(opt.guidance, config, out_path(opts, "guidance.csv"));

  for (double t : {0.05, 0.2, 1.0}) {
    const int node = static_cast<int>(
        std::lround(t / scenario.sim_grid.dt()));
    std::ostringstream name;
    name << "snapshot_t" << t << ".csv";
    report::write_snapshot(table.rows.front().sim.states.col(node),
                           scenario.basis, config, out_path(opts, name.str()));
  }

  std::vector<std::string> meta;
  meta.push_back("command: bench");
  meta.push_back("iterations: " + std::to_string(opt.raw.state.iterations));
  meta.push_back("ordering_ok: " + std::string(table.ordering_ok ? "yes"
                                                                 : "no"));
  meta.push_back("wall_seconds: " + std::to_string(elapsed_seconds(t0)));
  report::write_metadata(config, meta, out_path(opts, "metadata.txt"));

  std::cout << "strategy            J_N%    J_m%   total%\n";
  for (const auto& row : table.rows) {
    const double ref = table.rows.back().cost.total;
    std::cout << std::left << std::setw(18) << to_string(row.strategy)
              << std::right << std::fixed << std::setprecision(1)
              << std::setw(7) << 100.0 * row.cost.pde_cost / ref
              << std::setw(8) << 100.0 * row.cost.mobility_cost / ref
              << std::setw(9) << row.cost.normalized_percent.value_or(0.0)
              << "\n";
    std::cout.unsetf(std::ios::fixed);
  }
  if (opt.raw.state.stalled) {
    std::cerr << "error: optimizer stalled\n";
    return 2;
  }
  if (!table.ordering_ok) {
    std::cerr << "error: strategy cost ordering violated\n";
    return 1;
  }
  return 0;
}

int cmd_converge(const CommonOptions& opts, int n_low, int n_high,
                 bool cold_start) {
  const auto t0 = std::chrono::steady_clock::now();
  const ScenarioConfig config = resolve_config(opts);
  const ConvergenceReport result =
      convergence_study(config, n_low, n_high, !cold_start);
  report::write_convergence(result, config, out_path(opts, "convergence.csv"));

  std::vector<std::string> meta;
  meta.push_back("command: converge");
  meta.push_back("wall_seconds: " + std::to_string(elapsed_seconds(t0)));
  report::write_metadata(config, meta, out_path(opts, "metadata.txt"));

  std::cout << "N    dim  total        normalized%\n";
  for (const auto& e : result.entries) {
    std::cout << std::left << std::setw(5) << e.n_modes << std::setw(5)
              << e.n_modes * e.n_modes << std::setprecision(10)
              << std::setw(13) << e.total << std::setprecision(6)
              << e.normalized_percent << "\n";
  }
  return 0;
}

int cmd_validate(const CommonOptions& opts) {
  try {
    const ScenarioConfig config = resolve_config(opts);
    std::cout << "config ok (hash " << std::hex << config.hash() << ")\n";
    return 0;
  } catch (const std::exception& err) {
    std::cerr << "invalid config: " << err.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Jointly optimal mobile-actuator guidance and LQR control of a 2D "
      "diffusion-advection process"};
  app.require_subcommand(1);

  CommonOptions opts;
  int n_low = 6, n_high = 20;
  bool cold_start = false;

  auto* solve = app.add_subcommand(
      "solve", "Optimize guidance + control and export the solution");
  add_common(solve, opts);
  auto* bench = app.add_subcommand(
      "bench", "Five-strategy cost table, norm histories, snapshots");
  add_common(bench, opts);
  auto* converge = app.add_subcommand(
      "converge", "Optimal cost vs. Galerkin dimension study");
  add_common(converge, opts);
  converge->add_option("--n-low", n_low, "Smallest modes-per-axis");
  converge->add_option("--n-high", n_high, "Largest modes-per-axis");
  converge->add_flag("--cold-start", cold_start,
                     "Start each dimension from zero guidance");
  auto* validate = app.add_subcommand("validate", "Check a config file");
  add_common(validate, opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(opts);
    if (bench->parsed()) return cmd_bench(opts);
    if (converge->parsed()) return cmd_converge(opts, n_low, n_high,
                                                cold_start);
    if (validate->parsed()) return cmd_validate(opts);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
