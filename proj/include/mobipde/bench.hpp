#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mobipde/config.hpp"
#include "mobipde/riccati.hpp"
#include "mobipde/sweep.hpp"

namespace mobipde {

/// Runtime realization of a ScenarioConfig: basis, operator matrix, fleet,
/// weights, mobility cost, projected initial state.
struct Scenario {
  ScenarioConfig config;
  BasisSet basis;
  Eigen::MatrixXd a;
  FleetDynamics fleet;
  LQRWeights weights;
  MobilityCost mobility;
  CoefficientVector z0;
  TimeGrid sim_grid;
  std::optional<DisturbanceModel> disturbance;

  GuidanceBounds bounds() const;
  SystemHandles handles() const;
};

Scenario build_scenario(const ScenarioConfig& config);

enum class Strategy { OptFeedback, OptOpenLoop, SemiNaive, Naive, NoControl };

const char* to_string(Strategy s);

/// Optimal guidance/control resampled onto the simulation grid.  The
/// open-loop tape is the disturbance-free closed-loop control along xi*,
/// which is what the feedback law realizes when no disturbance acts.
struct OptimalSolution {
  OptimizeResult raw;            // on the optimizer grid
  GuidanceProfile guidance;      // sim grid
  TrajectoryProfile trajectory;  // sim grid
  InputTrajectory input;         // along xi*, disturbance per scenario
  RiccatiSolution riccati;       // sim grid
  FeedbackLaw feedback;
  OpenLoopControl open_loop;
  double mobility_cost = 0.0;    // J_m on the sim grid
};

/// Runs optimize() (from zero guidance unless an initial profile is given)
/// and prepares every strategy input on the simulation grid.
OptimalSolution prepare_optimal(
    const Scenario& scenario,
    const std::optional<GuidanceProfile>& initial = std::nullopt);

struct StrategyRun {
  Strategy strategy;
  CostBreakdown cost;
  SimResult sim;
};

/// Simulates one strategy with the scenario disturbance.  The optimal
/// solution is required for all strategies except NoControl and Naive.
StrategyRun run_strategy(Strategy strategy, const Scenario& scenario,
                         const OptimalSolution* optimal);

struct StrategyTable {
  std::vector<StrategyRun> rows;  // table order, OptFeedback first
  bool ordering_ok = false;       // strict total ordering across rows
};

StrategyTable strategy_table(const Scenario& scenario,
                             const OptimalSolution& optimal);

struct ConvergenceEntry {
  int n_modes = 0;
  double pde_cost = 0.0;
  double mobility_cost = 0.0;
  double total = 0.0;
  double normalized_percent = 0.0;  // vs. the largest-N entry
  int iterations = 0;
  bool stalled = false;
};

struct ConvergenceReport {
  std::vector<ConvergenceEntry> entries;
  int reference_modes = 0;

  /// True when totals never decrease by more than rel_tol of themselves.
  bool nondecreasing(double rel_tol) const;
};

/// Optimal (AP1) cost per Galerkin dimension.  With warm_start each N is
/// initialized from the previous optimum (guidance lives in actuator space,
/// so it transfers across N); otherwise every run starts from zero.
ConvergenceReport convergence_study(const ScenarioConfig& base, int n_low,
                                    int n_high, bool warm_start = true);

/// L2 norm of the state coefficients per grid node (equals the field L2
/// norm by orthonormality).
Eigen::VectorXd norm_history(const SimResult& sim);

/// Naive straight-line trajectory from xi_0 to 1 - xi_0 at constant speed,
/// with its constant guidance (single-integrator fleets only).
std::pair<GuidanceProfile, TrajectoryProfile> naive_line(
    const Scenario& scenario);

}  // namespace mobipde
