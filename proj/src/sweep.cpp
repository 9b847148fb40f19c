#include "mobipde/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mobipde {

MobilityCost MobilityCost::quadratic_guidance(double coeff) {
  if (coeff < 0.0) {
    throw std::invalid_argument("quadratic_guidance: coeff must be >= 0");
  }
  MobilityCost cost;
  cost.state_cost = [](const Eigen::VectorXd&, double) { return 0.0; };
  cost.state_cost_gradient = [](const Eigen::VectorXd& xi, double) {
    return Eigen::VectorXd::Zero(xi.size()).eval();
  };
  cost.guidance_cost = [coeff](const Eigen::VectorXd& p, double) {
    return coeff * p.squaredNorm();
  };
  cost.guidance_cost_gradient = [coeff](const Eigen::VectorXd& p, double) {
    return (2.0 * coeff * p).eval();
  };
  cost.terminal_cost = [](const Eigen::VectorXd&) { return 0.0; };
  cost.terminal_cost_gradient = [](const Eigen::VectorXd& xi) {
    return Eigen::VectorXd::Zero(xi.size()).eval();
  };
  return cost;
}

double MobilityCost::evaluate(const TrajectoryProfile& xi,
                              const GuidanceProfile& p) const {
  const TimeGrid& grid = p.grid;
  const double h = grid.dt();
  double integral = 0.0;
  double prev = 0.0;
  for (int k = 0; k < grid.node_count(); ++k) {
    const double t = grid.node(k);
    const double value = state_cost(xi.states.col(k), t) +
                         guidance_cost(p.values.col(k), t);
    if (k > 0) integral += 0.5 * h * (prev + value);
    prev = value;
  }
  return integral + terminal_cost(xi.states.col(grid.steps));
}

void OptimizerConfig::validate() const {
  if (max_iters < 1 || gradient_tolerance <= 0.0 || initial_step <= 0.0 ||
      sufficient_decrease <= 0.0 || max_backtracks < 1 || grid_steps < 1 ||
      shrink <= 0.0 || shrink >= 1.0) {
    throw std::invalid_argument("OptimizerConfig: invalid parameters");
  }
}

double hamiltonian(const Eigen::VectorXd& z, const Eigen::VectorXd& xi,
                   const Eigen::VectorXd& u, const Eigen::VectorXd& p,
                   const Eigen::VectorXd& lambda, const Eigen::VectorXd& mu,
                   double t, const SystemHandles& sys) {
  const auto positions = sys.fleet->positions(xi);
  const Eigen::MatrixXd b = project_input(positions, sys.fleet->kernel_sigmas(),
                                          *sys.basis, sys.kernel_box_points);
  double value = z.dot(sys.weights.state * z) + u.dot(sys.weights.control * u);
  value += sys.mobility.state_cost(xi, t) + sys.mobility.guidance_cost(p, t);
  value += lambda.dot(sys.a * z + b * u);
  value += mu.dot(sys.fleet->alpha() * xi + sys.fleet->beta() * p);
  return value;
}

namespace {

// Per-actuator kernel location gradients along the trajectory, sampled on
// the half grid; [j][i] = (dB/dx, dB/dy) for actuator i at half index j.
std::vector<std::vector<std::pair<CoefficientVector, CoefficientVector>>>
sample_kernel_gradients(const TrajectoryProfile& xi, const SystemHandles& sys) {
  const TimeGrid& grid = xi.grid;
  const auto sigmas = sys.fleet->kernel_sigmas();
  std::vector<std::vector<std::pair<CoefficientVector, CoefficientVector>>>
      grads(grid.half_count());
  for (int j = 0; j < grid.half_count(); ++j) {
    const auto positions = sys.fleet->positions(xi.at_half(j));
    grads[j].reserve(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
      grads[j].push_back(kernel_location_gradient(
          GaussianKernel(sigmas[i], positions[i]), *sys.basis,
          sys.kernel_box_points));
    }
  }
  return grads;
}

Eigen::VectorXd column_at_half(const Eigen::MatrixXd& nodes, int j) {
  if (j % 2 == 0) return nodes.col(j / 2);
  return 0.5 * (nodes.col(j / 2) + nodes.col(j / 2 + 1));
}

// Trapezoid weights on the grid nodes.
Eigen::VectorXd trapezoid_weights(const TimeGrid& grid) {
  Eigen::VectorXd w = Eigen::VectorXd::Constant(grid.node_count(), grid.dt());
  w[0] *= 0.5;
  w[grid.steps] *= 0.5;
  return w;
}

}  // namespace

void backward_costates(SweepState& state, const SystemHandles& sys) {
  const TimeGrid& grid = state.guidance.grid;
  const double h = grid.dt();
  const int n2 = static_cast<int>(sys.a.rows());
  const int n = sys.fleet->state_dim();
  const int ma = sys.fleet->actuator_count();

  state.lambda.resize(n2, grid.node_count());
  state.mu.resize(n, grid.node_count());

  const auto kernel_grads = sample_kernel_gradients(state.trajectory, sys);
  const Eigen::MatrixXd a_t = sys.a.transpose();
  const Eigen::MatrixXd alpha_t = sys.fleet->alpha().transpose();
  const Eigen::MatrixXd selector_t = sys.fleet->selector().transpose();

  Eigen::VectorXd lambda =
      2.0 * sys.weights.terminal * state.z_history.col(grid.steps);
  Eigen::VectorXd mu = sys.mobility.terminal_cost_gradient(
      state.trajectory.states.col(grid.steps));
  state.lambda.col(grid.steps) = lambda;
  state.mu.col(grid.steps) = mu;

  const auto rhs = [&](const Eigen::VectorXd& lam, const Eigen::VectorXd& m,
                       int j, Eigen::VectorXd& dlam, Eigen::VectorXd& dmu) {
    const double t = grid.half_time(j);
    const Eigen::VectorXd z = column_at_half(state.z_history, j);
    const Eigen::VectorXd u = state.control_history.col(j);
    dlam.noalias() = -2.0 * (sys.weights.state * z);
    dlam.noalias() -= a_t * lam;

    Eigen::VectorXd d(2 * ma);
    for (int i = 0; i < ma; ++i) {
      d[2 * i] = u[i] * lam.dot(kernel_grads[j][i].first);
      d[2 * i + 1] = u[i] * lam.dot(kernel_grads[j][i].second);
    }
    dmu = -sys.mobility.state_cost_gradient(state.trajectory.at_half(j), t);
    dmu.noalias() -= selector_t * d;
    dmu.noalias() -= alpha_t * m;
  };

  Eigen::VectorXd l1(n2), l2(n2), l3(n2), l4(n2);
  Eigen::VectorXd m1(n), m2(n), m3(n), m4(n);
  for (int k = grid.steps - 1; k >= 0; --k) {
    rhs(lambda, mu, 2 * k + 2, l1, m1);
    rhs(lambda - 0.5 * h * l1, mu - 0.5 * h * m1, 2 * k + 1, l2, m2);
    rhs(lambda - 0.5 * h * l2, mu - 0.5 * h * m2, 2 * k + 1, l3, m3);
    rhs(lambda - h * l3, mu - h * m3, 2 * k, l4, m4);
    lambda -= (h / 6.0) * (l1 + 2.0 * l2 + 2.0 * l3 + l4);
    mu -= (h / 6.0) * (m1 + 2.0 * m2 + 2.0 * m3 + m4);
    state.lambda.col(k) = lambda;
    state.mu.col(k) = mu;
  }
}

Eigen::MatrixXd guidance_gradient(const SweepState& state,
                                  const SystemHandles& sys) {
  const TimeGrid& grid = state.guidance.grid;
  const Eigen::MatrixXd beta_t = sys.fleet->beta().transpose();
  Eigen::MatrixXd grad(sys.fleet->guidance_dim(), grid.node_count());
  for (int k = 0; k < grid.node_count(); ++k) {
    grad.col(k) = sys.mobility.guidance_cost_gradient(
        state.guidance.values.col(k), grid.node(k));
    grad.col(k).noalias() += beta_t * state.mu.col(k);
  }
  return grad;
}

namespace {

struct Evaluation {
  TrajectoryProfile trajectory;
  InputTrajectory input;
  RiccatiSolution riccati;
  double pde_cost = 0.0;
  double mobility_cost = 0.0;

  double total() const { return pde_cost + mobility_cost; }
};

Evaluation evaluate_guidance(const GuidanceProfile& p,
                             const SystemHandles& sys) {
  Evaluation eval;
  eval.trajectory = propagate(*sys.fleet, p);
  const auto sigmas = sys.fleet->kernel_sigmas();
  const TrajectoryProfile& xi = eval.trajectory;
  eval.input = sample_input(
      [&](int j, double) { return sys.fleet->positions(xi.at_half(j)); },
      sigmas, *sys.basis, p.grid, std::nullopt, sys.kernel_box_points);
  RiccatiOptions options;
  options.store_matrices = false;
  options.store_gains = true;
  eval.riccati = solve_riccati(sys.a, eval.input, sys.weights, options);
  eval.pde_cost = pde_cost_via_riccati(sys.z0, eval.riccati);
  eval.mobility_cost = sys.mobility.evaluate(eval.trajectory, p);
  return eval;
}

}  // namespace

OptimizeResult optimize(const GuidanceProfile& initial_guidance,
                        const SystemHandles& sys, const OptimizerConfig& cfg) {
  cfg.validate();
  sys.weights.validate();

  const TimeGrid grid =
      TimeGrid::uniform(initial_guidance.grid.t_f, cfg.grid_steps);
  GuidanceProfile p =
      project_guidance(initial_guidance.resampled(grid), *sys.fleet);
  const Eigen::VectorXd w = trapezoid_weights(grid);

  Evaluation eval = evaluate_guidance(p, sys);
  double objective = eval.total();

  SweepState state;
  state.guidance = p;

  const auto weighted_inner = [&](const Eigen::MatrixXd& a,
                                  const Eigen::MatrixXd& b) {
    return ((a.array() * b.array()).colwise().sum().transpose() * w.array())
        .sum();
  };

  const auto forward_and_gradient = [&](Eigen::MatrixXd& grad) {
    const FeedbackLaw law(grid,
                          std::make_shared<const std::vector<Eigen::MatrixXd>>(
                              eval.riccati.gains));
    const SimResult sim =
        simulate_loop(sys.a, eval.input, law, sys.z0, sys.weights);
    state.guidance = p;
    state.trajectory = eval.trajectory;
    state.z_history = sim.states;
    state.control_history = sim.controls_half;
    state.pde_cost = eval.pde_cost;
    state.mobility_cost = eval.mobility_cost;
    backward_costates(state, sys);
    grad = guidance_gradient(state, sys);
  };

  Eigen::MatrixXd grad;
  for (int iter = 0;; ++iter) {
    forward_and_gradient(grad);
    state.iterations = iter;
    state.cost_history.push_back(objective);

    GuidanceProfile probe = p;
    probe.values -= grad;
    probe = project_guidance(std::move(probe), *sys.fleet);
    const Eigen::MatrixXd projected_step = p.values - probe.values;
    state.gradient_norm = std::sqrt(
        std::max(0.0, weighted_inner(projected_step, projected_step)));

    if (state.gradient_norm <=
        cfg.gradient_tolerance * (1.0 + std::abs(objective))) {
      break;
    }
    if (iter >= cfg.max_iters) break;

    // Armijo backtracking along the projected gradient arc.
    double step = cfg.initial_step;
    bool accepted = false;
    for (int trial = 0; trial < cfg.max_backtracks; ++trial) {
      GuidanceProfile candidate = p;
      candidate.values -= step * grad;
      candidate = project_guidance(std::move(candidate), *sys.fleet);
      const double directional =
          weighted_inner(grad, candidate.values - p.values);
      Evaluation cand_eval = evaluate_guidance(candidate, sys);
      if (cand_eval.total() <=
          objective + cfg.sufficient_decrease * directional) {
        p = std::move(candidate);
        eval = std::move(cand_eval);
        objective = eval.total();
        accepted = true;
        break;
      }
      step *= cfg.shrink;
    }
    if (!accepted) {
      state.stalled = true;
      break;
    }
  }

  OptimizeResult result;
  result.guidance = p;
  result.trajectory = state.trajectory;
  result.control = OpenLoopControl{grid, state.control_history};
  result.cost.pde_cost = state.pde_cost;
  result.cost.mobility_cost = state.mobility_cost;
  result.cost.total = state.total_cost();
  result.state = std::move(state);
  return result;
}

}  // namespace mobipde
