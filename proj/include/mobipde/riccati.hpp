#pragma once

#include <Eigen/Dense>
#include <memory>
#include <stdexcept>
#include <variant>
#include <vector>

#include "mobipde/actuation.hpp"
#include "mobipde/fleet.hpp"
#include "mobipde/timegrid.hpp"

namespace mobipde {

/// Quadratic weights of the PDE cost: state weight Q_N, terminal weight
/// Q_fN, and control weight R.  In the orthonormal basis the paper's
/// Q = Q_f = chi corresponds to identity matrices.
struct LQRWeights {
  Eigen::MatrixXd state;     // Q_N
  Eigen::MatrixXd terminal;  // Q_fN
  Eigen::MatrixXd control;   // R

  static LQRWeights identity_state(int state_dim, int control_dim,
                                   double control_scale);
  /// Symmetry to 1e-12, Q/Q_f eigenvalues >= -1e-10, R eigenvalues positive.
  void validate() const;
};

struct RiccatiOptions {
  bool store_matrices = true;  // Pi at every grid node
  bool store_gains = true;     // R^{-1} B^T Pi at every grid node
  double blowup_ceiling = 1e12;
};

struct RiccatiBlowup : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Backward solution of Pi_dot = -A^T Pi - Pi A - Q + Pi B R^{-1} B^T Pi
/// with Pi(t_f) = Q_f, symmetrized every step.
struct RiccatiSolution {
  TimeGrid grid;
  Eigen::MatrixXd pi0;                    // Pi(0)
  std::vector<Eigen::MatrixXd> pi;        // optional, node-indexed
  std::vector<Eigen::MatrixXd> gains;     // optional, node-indexed, m x n
  double max_asymmetry = 0.0;             // before per-step symmetrization

  const Eigen::MatrixXd& pi_at_node(int k) const { return pi.at(k); }
  Eigen::MatrixXd pi_interpolated(double t) const;
};

RiccatiSolution solve_riccati(const Eigen::MatrixXd& a,
                              const InputTrajectory& input,
                              const LQRWeights& weights,
                              const RiccatiOptions& options = {});

/// Optimal PDE cost identity <Z_0, Pi(0) Z_0>.
double pde_cost_via_riccati(const CoefficientVector& z0,
                            const RiccatiSolution& solution);

/// u(t, Z) = -R^{-1} B^T(t) Pi(t) Z realized through the stored gains,
/// linearly interpolated between grid nodes.
class FeedbackLaw {
 public:
  FeedbackLaw() = default;
  FeedbackLaw(TimeGrid grid, std::shared_ptr<const std::vector<Eigen::MatrixXd>>
                                 gains);

  Eigen::VectorXd operator()(double t, const Eigen::VectorXd& z) const;
  /// Gain at half-grid index j (node value or midpoint average).
  Eigen::MatrixXd gain_at_half(int j) const;
  const TimeGrid& grid() const { return grid_; }

 private:
  TimeGrid grid_;
  std::shared_ptr<const std::vector<Eigen::MatrixXd>> gains_;
};

FeedbackLaw synthesize_feedback(const RiccatiSolution& solution,
                                const LQRWeights& weights,
                                const InputTrajectory& input);

/// Control played back from recorded half-grid samples.
struct OpenLoopControl {
  TimeGrid grid;
  Eigen::MatrixXd values_half;  // m x half_count()

  Eigen::VectorXd at_half(int j) const { return values_half.col(j); }
  Eigen::VectorXd at(double t) const;
  static OpenLoopControl from_nodes(const TimeGrid& grid,
                                    const Eigen::MatrixXd& node_values);
};

/// Local proportional feedback u_i = gain * z(xi_i(t), t) evaluated on the
/// loop's own field (the semi-naive and naive strategies).
struct LocalFieldFeedback {
  double gain = -0.1;
  const BasisSet* basis = nullptr;
  TrajectoryProfile trajectory;
  const FleetDynamics* fleet = nullptr;
};

using ControlLaw =
    std::variant<std::monostate, OpenLoopControl, FeedbackLaw,
                 LocalFieldFeedback>;

struct SimResult {
  TimeGrid grid;
  Eigen::MatrixXd states;        // n2 x (steps + 1)
  Eigen::MatrixXd controls;      // m x (steps + 1), node samples
  Eigen::MatrixXd controls_half; // m x (2 steps + 1): the controls the
                                 // integrator actually applied, midpoints
                                 // recorded from the first middle stage
  Eigen::VectorXd norm_history;  // |Z(t_k)|
  double running_cost = 0.0;     // trapezoid of <Z,QZ> + u'Ru
  double terminal_cost = 0.0;    // <Z(t_f), Q_f Z(t_f)>

  double pde_cost() const { return running_cost + terminal_cost; }
};

/// RK4 forward simulation of Z_dot = A Z + B(t) u + d(t) with the requested
/// control law, accumulating the quadratic PDE cost by trapezoid rule.
SimResult simulate_loop(const Eigen::MatrixXd& a, const InputTrajectory& input,
                        const ControlLaw& control, const CoefficientVector& z0,
                        const LQRWeights& weights);

}  // namespace mobipde
