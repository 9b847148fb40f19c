#include <doctest.h>

#include <cmath>

#include "mobipde/bench.hpp"

using namespace mobipde;

namespace {

// Small, fast scenario: the paper geometry at reduced resolution.
ScenarioConfig tiny_config() {
  ScenarioConfig config;
  config.n_modes = 3;
  config.grid_steps = 120;
  config.optimizer.grid_steps = 60;
  config.optimizer.max_iters = 6;
  return config;
}

}  // namespace

TEST_CASE("naive line runs corner to corner at constant speed") {
  const auto scenario = build_scenario(tiny_config());
  const auto [p, xi] = naive_line(scenario);

  const Eigen::VectorXd start = scenario.fleet.initial_state();
  const Eigen::VectorXd target = Eigen::VectorXd::Ones(8) - start;
  CHECK((xi.states.col(0) - start).cwiseAbs().maxCoeff() == 0.0);
  CHECK((xi.states.col(xi.grid.steps) - target).cwiseAbs().maxCoeff() <
        1e-12);
  // Constant guidance, mobility cost 0.1 sum |v_i|^2 t_f.
  CHECK((p.values.col(0) - p.values.col(60)).cwiseAbs().maxCoeff() == 0.0);
  const double expected = 0.1 * (target - start).squaredNorm();
  CHECK(scenario.mobility.evaluate(xi, p) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("strategy table rows and normalization") {
  const auto scenario = build_scenario(tiny_config());
  const auto optimal = prepare_optimal(scenario);
  const auto table = strategy_table(scenario, optimal);

  REQUIRE(table.rows.size() == 5);
  CHECK(table.rows[0].strategy == Strategy::OptFeedback);
  CHECK(table.rows[4].strategy == Strategy::NoControl);

  SUBCASE("no-control anchors the normalization at exactly 100 percent") {
    CHECK(table.rows[4].cost.normalized_percent.value() ==
          doctest::Approx(100.0).epsilon(1e-14));
    CHECK(table.rows[4].cost.mobility_cost == 0.0);
  }
  SUBCASE("every strategy beats no control in this scenario") {
    for (const auto& row : table.rows) {
      CHECK(row.cost.normalized_percent.value() <= 100.0 + 1e-12);
      CHECK(row.cost.total == doctest::Approx(row.cost.pde_cost +
                                              row.cost.mobility_cost));
    }
  }
  SUBCASE("optimal rows share the optimal mobility cost") {
    CHECK(table.rows[0].cost.mobility_cost ==
          table.rows[1].cost.mobility_cost);
    CHECK(table.rows[0].cost.mobility_cost ==
          table.rows[2].cost.mobility_cost);
  }
  SUBCASE("identical configs give bit-identical tables") {
    const auto scenario2 = build_scenario(tiny_config());
    const auto optimal2 = prepare_optimal(scenario2);
    const auto table2 = strategy_table(scenario2, optimal2);
    for (int i = 0; i < 5; ++i) {
      CHECK(table.rows[i].cost.total == table2.rows[i].cost.total);
    }
  }
}

TEST_CASE("run_strategy demands the optimal solution where needed") {
  const auto scenario = build_scenario(tiny_config());
  CHECK_THROWS_AS(run_strategy(Strategy::OptFeedback, scenario, nullptr),
                  std::invalid_argument);
  CHECK_NOTHROW(run_strategy(Strategy::NoControl, scenario, nullptr));
  CHECK_NOTHROW(run_strategy(Strategy::Naive, scenario, nullptr));
}

TEST_CASE("norm histories") {
  SUBCASE("uncontrolled Dirichlet decay is strictly decreasing") {
    auto config = tiny_config();
    config.disturbance = false;
    const auto scenario = build_scenario(config);
    const auto run = run_strategy(Strategy::NoControl, scenario, nullptr);
    const auto norms = norm_history(run.sim);
    CHECK(norms[0] == doctest::Approx(scenario.z0.norm()));
    for (int k = 1; k < norms.size(); ++k) CHECK(norms[k] < norms[k - 1]);
  }

  SUBCASE("Neumann conserves a constant initial state exactly") {
    auto config = tiny_config();
    config.bc = BoundaryCondition::Neumann;
    config.disturbance = false;
    config.initial_condition = "zero";
    const auto scenario = build_scenario(config);
    CoefficientVector z0 = CoefficientVector::Zero(scenario.basis.dim());
    z0[scenario.basis.flat_index(0, 0)] = 2.5;  // z == 2.5 on the square

    GuidanceProfile rest = GuidanceProfile::zero(scenario.sim_grid,
                                                 scenario.bounds());
    const auto xi = propagate(scenario.fleet, rest);
    const auto input = sample_input(
        [&](int j, double) { return scenario.fleet.positions(xi.at_half(j)); },
        scenario.fleet.kernel_sigmas(), scenario.basis, scenario.sim_grid);
    const auto sim = simulate_loop(scenario.a, input, std::monostate{}, z0,
                                   scenario.weights);
    for (int k = 0; k < sim.norm_history.size(); ++k) {
      CHECK(std::abs(sim.norm_history[k] - 2.5) < 1e-12);
    }
  }

  SUBCASE("insulating boundary retains more energy than an absorbing one") {
    auto dirichlet_config = tiny_config();
    dirichlet_config.disturbance = false;
    auto neumann_config = dirichlet_config;
    neumann_config.bc = BoundaryCondition::Neumann;
    const auto dirichlet =
        run_strategy(Strategy::NoControl, build_scenario(dirichlet_config),
                     nullptr);
    const auto neumann = run_strategy(
        Strategy::NoControl, build_scenario(neumann_config), nullptr);
    const int last = dirichlet.sim.norm_history.size() - 1;
    CHECK(neumann.sim.norm_history[last] >
          dirichlet.sim.norm_history[last]);
  }
}

TEST_CASE("convergence study on a tiny ladder") {
  // Monotonicity only shows once each dimension is close to its own
  // optimum, so this small case runs the optimizer to its floor.
  auto config = tiny_config();
  config.grid_steps = 200;
  config.optimizer.grid_steps = 100;
  config.optimizer.max_iters = 250;
  const auto report = convergence_study(config, 2, 4);

  REQUIRE(report.entries.size() == 3);
  CHECK(report.reference_modes == 4);
  CHECK(report.entries[0].n_modes == 2);
  CHECK(report.entries[2].normalized_percent ==
        doctest::Approx(100.0).epsilon(1e-14));
  for (const auto& entry : report.entries) {
    CHECK(entry.total == doctest::Approx(entry.pde_cost +
                                         entry.mobility_cost));
  }
  // Richer approximation spaces retain more of the true cost.
  CHECK(report.nondecreasing(1e-3));
}
