#pragma once

#include <Eigen/Dense>
#include <vector>

#include "mobipde/timegrid.hpp"

namespace mobipde {

/// One mobile actuator: linear dynamics xi_dot = alpha xi + beta p with the
/// first two state components being the planar position.
struct ActuatorModel {
  Eigen::MatrixXd alpha;   // n_i x n_i
  Eigen::MatrixXd beta;    // n_i x m_i
  Eigen::VectorXd xi0;     // n_i
  double kernel_sigma = 0.05;
};

/// Concatenated actuator team: block-diagonal alpha/beta, stacked initial
/// state, and the selector M with M xi = stacked planar positions.
class FleetDynamics {
 public:
  static FleetDynamics assemble(std::vector<ActuatorModel> actuators);
  /// The benchmark fleet: alpha_i = 0, beta_i = I2, xi_i = position.
  static FleetDynamics single_integrators(
      const std::vector<Eigen::Vector2d>& starts, double kernel_sigma = 0.05);

  int actuator_count() const { return static_cast<int>(actuators_.size()); }
  int state_dim() const { return static_cast<int>(alpha_.rows()); }
  int guidance_dim() const { return static_cast<int>(beta_.cols()); }

  const Eigen::MatrixXd& alpha() const { return alpha_; }
  const Eigen::MatrixXd& beta() const { return beta_; }
  const Eigen::VectorXd& initial_state() const { return xi0_; }
  const Eigen::MatrixXd& selector() const { return selector_; }
  const std::vector<ActuatorModel>& actuators() const { return actuators_; }
  std::vector<double> kernel_sigmas() const;

  /// Guidance components belonging to actuator i: [offset, offset + count).
  std::pair<int, int> guidance_block(int i) const;

  std::vector<Eigen::Vector2d> positions(const Eigen::VectorXd& state) const;

  /// Kalman rank test per actuator pair (alpha_i, beta_i).
  bool is_controllable() const;

 private:
  std::vector<ActuatorModel> actuators_;
  Eigen::MatrixXd alpha_, beta_, selector_;
  Eigen::VectorXd xi0_;
  std::vector<int> guidance_offsets_;
};

/// Componentwise box plus magnitude/rate limits of the admissible guidance
/// set: |p_i(t)|_2 <= p_max per actuator and |p(t1) - p(t2)| <= a_max |t1-t2|.
struct GuidanceBounds {
  Eigen::VectorXd lower, upper;  // box P, per component
  double p_max = 100.0;
  double a_max = 100.0;

  static GuidanceBounds uniform(int dim, double lo, double hi, double p_max,
                                double a_max);
};

/// Guidance sampled on grid nodes, interpreted as piecewise linear in time.
struct GuidanceProfile {
  TimeGrid grid;
  Eigen::MatrixXd values;  // m x (steps + 1)
  GuidanceBounds bounds;

  static GuidanceProfile zero(const TimeGrid& grid, const GuidanceBounds& b);
  static GuidanceProfile constant(const TimeGrid& grid,
                                  const GuidanceBounds& b,
                                  const Eigen::VectorXd& value);

  Eigen::VectorXd at(double t) const;
  Eigen::VectorXd at_half(int j) const;
  /// Linear resampling onto another grid with the same horizon.
  GuidanceProfile resampled(const TimeGrid& target) const;
};

/// Actuator state history on grid nodes.
struct TrajectoryProfile {
  TimeGrid grid;
  Eigen::MatrixXd states;  // n x (steps + 1)

  Eigen::VectorXd at(double t) const;
  Eigen::VectorXd at_half(int j) const;
};

/// RK4 integration of the fleet dynamics driven by a guidance profile;
/// realizes the trajectory map T on the shared grid.
TrajectoryProfile propagate(const FleetDynamics& fleet,
                            const GuidanceProfile& guidance);

struct GuidanceViolation {
  enum class Kind { Box, Magnitude, Rate };
  Kind kind;
  int step;
  int index;      // component (Box) or actuator (Magnitude); -1 for Rate
  double amount;  // how far past the bound
};

/// Empty iff box, per-actuator magnitude, and rate constraints hold at every
/// grid node.  Violations are data, not exceptions.
std::vector<GuidanceViolation> validate_guidance(const GuidanceProfile& p,
                                                 const FleetDynamics& fleet);

/// Clip to the box, scale per-actuator blocks onto the p_max ball, then a
/// forward rate-limit pass.  Idempotent on feasible profiles.
GuidanceProfile project_guidance(GuidanceProfile p, const FleetDynamics& fleet);

}  // namespace mobipde
