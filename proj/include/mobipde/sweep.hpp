#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "mobipde/actuation.hpp"
#include "mobipde/basis.hpp"
#include "mobipde/fleet.hpp"
#include "mobipde/riccati.hpp"

namespace mobipde {

/// Mobility cost J_m = int h(xi,t) + g(p,t) dt + h_f(xi(t_f)).  All pieces
/// nonnegative; g(.,t) convex with a quadratic lower bound.
struct MobilityCost {
  std::function<double(const Eigen::VectorXd&, double)> state_cost;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)>
      state_cost_gradient;
  std::function<double(const Eigen::VectorXd&, double)> guidance_cost;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&, double)>
      guidance_cost_gradient;
  std::function<double(const Eigen::VectorXd&)> terminal_cost;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)>
      terminal_cost_gradient;

  /// The benchmark choice h = h_f = 0, g(p,t) = coeff * p'p.
  static MobilityCost quadratic_guidance(double coeff);

  double evaluate(const TrajectoryProfile& xi, const GuidanceProfile& p) const;
};

struct OptimizerConfig {
  int max_iters = 500;
  /// Stop when the projected-gradient norm falls below
  /// gradient_tolerance * (1 + |J|).
  double gradient_tolerance = 1e-4;
  double initial_step = 1.0;
  double shrink = 0.5;
  double sufficient_decrease = 1e-4;
  int max_backtracks = 40;
  /// Time grid used inside the sweep (guidance nodes and integrators).
  int grid_steps = 500;

  void validate() const;
};

/// Everything the sweep needs about the coupled system.
struct SystemHandles {
  const BasisSet* basis = nullptr;
  Eigen::MatrixXd a;  // A_N
  const FleetDynamics* fleet = nullptr;
  LQRWeights weights;
  MobilityCost mobility;
  CoefficientVector z0;
  int kernel_box_points = 12;
};

/// One forward/backward sweep snapshot.
struct SweepState {
  GuidanceProfile guidance;
  TrajectoryProfile trajectory;
  Eigen::MatrixXd z_history;       // n2 x (K+1)
  Eigen::MatrixXd control_history; // m_a x (2K+1) half grid, inner-LQR optimum
  Eigen::MatrixXd lambda;          // n2 x (K+1) costate of Z
  Eigen::MatrixXd mu;              // n x (K+1) costate of xi
  int iterations = 0;
  std::vector<double> cost_history;
  bool stalled = false;
  double gradient_norm = 0.0;
  double pde_cost = 0.0;
  double mobility_cost = 0.0;

  double total_cost() const { return pde_cost + mobility_cost; }
};

/// Pontryagin Hamiltonian of the joint problem:
/// <Z,QZ> + u'Ru + h(xi,t) + g(p,t) + lambda'(A Z + B(M xi) u)
/// + mu'(alpha xi + beta p).
double hamiltonian(const Eigen::VectorXd& z, const Eigen::VectorXd& xi,
                   const Eigen::VectorXd& u, const Eigen::VectorXd& p,
                   const Eigen::VectorXd& lambda, const Eigen::VectorXd& mu,
                   double t, const SystemHandles& sys);

/// Backward RK4 integration of the costates
///   lambda_dot = -2 Q Z - A' lambda,            lambda(t_f) = 2 Q_f Z(t_f)
///   mu_dot = -grad_xi h - M' D - alpha' mu,     mu(t_f) = grad h_f(xi(t_f))
/// where D stacks lambda' (dB_i/dposition) u_i over actuators.  Requires a
/// completed forward pass (trajectory, z_history, control_history).
void backward_costates(SweepState& state, const SystemHandles& sys);

/// grad_p H on the grid: guidance-cost gradient plus beta' mu.
Eigen::MatrixXd guidance_gradient(const SweepState& state,
                                  const SystemHandles& sys);

/// Row type of the benchmark tables.
struct CostBreakdown {
  double pde_cost = 0.0;       // J_N
  double mobility_cost = 0.0;  // J_m
  double total = 0.0;
  std::optional<double> normalized_percent;
};

struct OptimizeResult {
  GuidanceProfile guidance;      // p*
  TrajectoryProfile trajectory;  // xi*
  OpenLoopControl control;       // u* sampled along xi*
  CostBreakdown cost;            // (AP1) objective pieces
  SweepState state;
};

/// Projected gradient descent with Armijo backtracking on the reduced (AP1)
/// objective <Z_0, Pi(0) Z_0> + J_m; the inner LQR optimum is re-solved
/// along every trial trajectory.  Throws nothing on stall: the returned
/// state carries the stall flag and diagnostics.
OptimizeResult optimize(const GuidanceProfile& initial_guidance,
                        const SystemHandles& sys, const OptimizerConfig& cfg);

}  // namespace mobipde
