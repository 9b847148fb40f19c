#include "mobipde/bench.hpp"

#include <cmath>
#include <stdexcept>

namespace mobipde {

GuidanceBounds Scenario::bounds() const {
  return GuidanceBounds::uniform(fleet.guidance_dim(),
                                 config.guidance_box_lower,
                                 config.guidance_box_upper, config.p_max,
                                 config.a_max);
}

SystemHandles Scenario::handles() const {
  SystemHandles sys;
  sys.basis = &basis;
  sys.a = a;
  sys.fleet = &fleet;
  sys.weights = weights;
  sys.mobility = mobility;
  sys.z0 = z0;
  sys.kernel_box_points = config.kernel_box_points;
  return sys;
}

Scenario build_scenario(const ScenarioConfig& config) {
  config.validate();
  Scenario scenario{
      config,
      BasisSet::build(config.bc, config.n_modes, config.quad_points),
      {},
      FleetDynamics::single_integrators(config.actuator_starts,
                                        config.kernel_sigma),
      {},
      MobilityCost::quadratic_guidance(config.guidance_cost_coeff),
      {},
      TimeGrid::uniform(config.t_f, config.grid_steps),
      {}};
  scenario.a = assemble_transport(scenario.basis, config.diffusivity,
                                  config.velocity);
  scenario.weights = LQRWeights::identity_state(
      scenario.basis.dim(), scenario.fleet.actuator_count(),
      config.control_weight);
  scenario.z0 = project_field(config.initial_field(), scenario.basis);
  if (config.disturbance) {
    scenario.disturbance = DisturbanceModel::circular_sweep(
        config.disturbance_amplitude, config.disturbance_sigma);
  }
  return scenario;
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::OptFeedback: return "opt-feedback";
    case Strategy::OptOpenLoop: return "opt-open-loop";
    case Strategy::SemiNaive: return "semi-naive";
    case Strategy::Naive: return "naive";
    case Strategy::NoControl: return "no-control";
  }
  return "?";
}

namespace {

InputTrajectory sample_along(const Scenario& scenario,
                             const TrajectoryProfile& xi,
                             bool with_disturbance) {
  return sample_input(
      [&](int j, double) { return scenario.fleet.positions(xi.at_half(j)); },
      scenario.fleet.kernel_sigmas(), scenario.basis, scenario.sim_grid,
      with_disturbance ? scenario.disturbance : std::nullopt,
      scenario.config.kernel_box_points);
}

}  // namespace

std::pair<GuidanceProfile, TrajectoryProfile> naive_line(
    const Scenario& scenario) {
  const auto& fleet = scenario.fleet;
  for (const auto& actuator : fleet.actuators()) {
    if (actuator.alpha.cwiseAbs().maxCoeff() != 0.0 ||
        !actuator.beta.isIdentity(0.0)) {
      throw std::invalid_argument(
          "naive_line: defined for single-integrator fleets only");
    }
  }
  const Eigen::VectorXd xi0 = fleet.initial_state();
  const Eigen::VectorXd target =
      Eigen::VectorXd::Ones(fleet.state_dim()) - xi0;
  const Eigen::VectorXd velocity = (target - xi0) / scenario.sim_grid.t_f;
  GuidanceProfile p = GuidanceProfile::constant(scenario.sim_grid,
                                                scenario.bounds(), velocity);
  return {p, propagate(fleet, p)};
}

OptimalSolution prepare_optimal(const Scenario& scenario,
                                const std::optional<GuidanceProfile>& initial) {
  const SystemHandles sys = scenario.handles();
  const GuidanceProfile start =
      initial.value_or(GuidanceProfile::zero(
          TimeGrid::uniform(scenario.config.t_f,
                            scenario.config.optimizer.grid_steps),
          scenario.bounds()));

  OptimalSolution opt;
  opt.raw = optimize(start, sys, scenario.config.optimizer);

  // Everything the strategies consume lives on the simulation grid.
  opt.guidance = opt.raw.guidance.resampled(scenario.sim_grid);
  opt.trajectory = propagate(scenario.fleet, opt.guidance);
  opt.input = sample_along(scenario, opt.trajectory,
                           scenario.config.disturbance);

  InputTrajectory clean = opt.input;
  clean.disturbance.clear();
  RiccatiOptions options;
  options.store_matrices = false;
  options.store_gains = true;
  opt.riccati = solve_riccati(sys.a, clean, scenario.weights, options);
  opt.feedback = synthesize_feedback(opt.riccati, scenario.weights, clean);

  // The open-loop tape is the feedback control recorded on the
  // disturbance-free loop; with no disturbance both strategies coincide.
  const SimResult reference =
      simulate_loop(sys.a, clean, opt.feedback, scenario.z0,
                    scenario.weights);
  opt.open_loop = OpenLoopControl{scenario.sim_grid, reference.controls_half};
  opt.mobility_cost = scenario.mobility.evaluate(opt.trajectory, opt.guidance);
  return opt;
}

StrategyRun run_strategy(Strategy strategy, const Scenario& scenario,
                         const OptimalSolution* optimal) {
  const bool needs_optimal = strategy == Strategy::OptFeedback ||
                             strategy == Strategy::OptOpenLoop ||
                             strategy == Strategy::SemiNaive;
  if (needs_optimal && optimal == nullptr) {
    throw std::invalid_argument("run_strategy: optimal solution required");
  }

  StrategyRun run;
  run.strategy = strategy;
  switch (strategy) {
    case Strategy::OptFeedback: {
      run.sim = simulate_loop(scenario.a, optimal->input, optimal->feedback,
                              scenario.z0, scenario.weights);
      run.cost.mobility_cost = optimal->mobility_cost;
      break;
    }
    case Strategy::OptOpenLoop: {
      run.sim = simulate_loop(scenario.a, optimal->input, optimal->open_loop,
                              scenario.z0, scenario.weights);
      run.cost.mobility_cost = optimal->mobility_cost;
      break;
    }
    case Strategy::SemiNaive: {
      LocalFieldFeedback local{-0.1, &scenario.basis, optimal->trajectory,
                               &scenario.fleet};
      run.sim = simulate_loop(scenario.a, optimal->input, local, scenario.z0,
                              scenario.weights);
      run.cost.mobility_cost = optimal->mobility_cost;
      break;
    }
    case Strategy::Naive: {
      const auto [p, xi] = naive_line(scenario);
      const InputTrajectory input = sample_along(scenario, xi, true);
      LocalFieldFeedback local{-0.1, &scenario.basis, xi, &scenario.fleet};
      run.sim = simulate_loop(scenario.a, input, local, scenario.z0,
                              scenario.weights);
      run.cost.mobility_cost = scenario.mobility.evaluate(xi, p);
      break;
    }
    case Strategy::NoControl: {
      // Control is identically zero; actuators never move.
      GuidanceProfile rest =
          GuidanceProfile::zero(scenario.sim_grid, scenario.bounds());
      const TrajectoryProfile xi = propagate(scenario.fleet, rest);
      const InputTrajectory input = sample_along(scenario, xi, true);
      run.sim = simulate_loop(scenario.a, input, std::monostate{},
                              scenario.z0, scenario.weights);
      run.cost.mobility_cost = 0.0;
      break;
    }
  }
  run.cost.pde_cost = run.sim.pde_cost();
  run.cost.total = run.cost.pde_cost + run.cost.mobility_cost;
  return run;
}

StrategyTable strategy_table(const Scenario& scenario,
                             const OptimalSolution& optimal) {
  StrategyTable table;
  const Strategy order[] = {Strategy::OptFeedback, Strategy::OptOpenLoop,
                            Strategy::SemiNaive, Strategy::Naive,
                            Strategy::NoControl};
  for (Strategy s : order) {
    table.rows.push_back(run_strategy(s, scenario, &optimal));
  }
  const double reference = table.rows.back().cost.total;
  for (auto& row : table.rows) {
    row.cost.normalized_percent = 100.0 * row.cost.total / reference;
  }
  table.ordering_ok = true;
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    if (!(table.rows[i - 1].cost.total < table.rows[i].cost.total)) {
      table.ordering_ok = false;
    }
  }
  return table;
}

ConvergenceReport convergence_study(const ScenarioConfig& base, int n_low,
                                    int n_high, bool warm_start) {
  if (n_low < 1 || n_high < n_low) {
    throw std::invalid_argument("convergence_study: need 1 <= n_low <= n_high");
  }
  ConvergenceReport report;
  report.reference_modes = n_high;

  std::optional<GuidanceProfile> carry;
  for (int n = n_low; n <= n_high; ++n) {
    ScenarioConfig config = base;
    config.n_modes = n;
    const Scenario scenario = build_scenario(config);
    const OptimalSolution opt =
        prepare_optimal(scenario, warm_start ? carry : std::nullopt);

    // Final (AP1) objective on the common simulation grid so entries are
    // comparable across N.
    InputTrajectory clean = opt.input;
    clean.disturbance.clear();
    RiccatiOptions options;
    options.store_matrices = false;
    options.store_gains = false;
    const RiccatiSolution fine =
        solve_riccati(scenario.a, clean, scenario.weights, options);

    ConvergenceEntry entry;
    entry.n_modes = n;
    entry.pde_cost = pde_cost_via_riccati(scenario.z0, fine);
    entry.mobility_cost = opt.mobility_cost;
    entry.total = entry.pde_cost + entry.mobility_cost;
    entry.iterations = opt.raw.state.iterations;
    entry.stalled = opt.raw.state.stalled;
    report.entries.push_back(entry);

    if (warm_start) carry = opt.raw.guidance;
  }
  const double reference = report.entries.back().total;
  for (auto& entry : report.entries) {
    entry.normalized_percent = 100.0 * entry.total / reference;
  }
  return report;
}

bool ConvergenceReport::nondecreasing(double rel_tol) const {
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].total < entries[i - 1].total * (1.0 - rel_tol)) {
      return false;
    }
  }
  return true;
}

Eigen::VectorXd norm_history(const SimResult& sim) {
  return sim.norm_history;
}

}  // namespace mobipde
