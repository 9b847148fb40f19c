#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "mobipde/basis.hpp"
#include "mobipde/timegrid.hpp"

namespace mobipde {

/// Truncated Gaussian actuation profile: peak 1/(2 pi sigma^2) at the center,
/// support restricted to the square |x - x_c| <= sigma, |y - y_c| <= sigma.
struct GaussianKernel {
  double sigma = 0.05;
  Eigen::Vector2d center = Eigen::Vector2d::Zero();

  GaussianKernel(double sigma_in, const Eigen::Vector2d& center_in);

  double value(double x, double y) const;
  /// Gradient of the smooth Gaussian with respect to the center location.
  /// The moving-support term of the truncation is ignored.
  Eigen::Vector2d center_gradient(double x, double y) const;
};

/// Projection of the kernel onto the basis, integrated over the unit square
/// intersected with the kernel support.  Uses a dedicated Gauss rule over the
/// support box (the global basis rule cannot see a sigma = 0.05 spot).
CoefficientVector project_kernel(const GaussianKernel& kernel,
                                 const BasisSet& basis, int box_points = 12);

/// d/d(center) of project_kernel.  Differentiates the smooth Gaussian under
/// the integral and the moving edges of the truncated support; both terms
/// are the same order, so the pair is the full derivative of the projected
/// column (up to quadrature error).
std::pair<CoefficientVector, CoefficientVector> kernel_location_gradient(
    const GaussianKernel& kernel, const BasisSet& basis, int box_points = 12);

/// Input matrix B_N at fixed actuator positions: column i is the projection
/// of actuator i's kernel.  Positions may lie outside the domain; the
/// corresponding column is integrated over the remaining intersection.
Eigen::MatrixXd project_input(const std::vector<Eigen::Vector2d>& positions,
                              const std::vector<double>& sigmas,
                              const BasisSet& basis, int box_points = 12);

/// Mobile disturbance w(x, t) = amplitude * kernel(center = trajectory(t)).
struct DisturbanceModel {
  double amplitude = 0.5;
  double sigma = 0.05;
  std::function<Eigen::Vector2d(double)> trajectory;

  /// Circular sweep 0.5 + 0.3 (sin, cos)(2 pi t) used by both benchmark
  /// scenarios.
  static DisturbanceModel circular_sweep(double amplitude = 0.5,
                                         double sigma = 0.05);
};

/// Time-sampled input data on the half grid of a TimeGrid: B_N at every
/// half step, plus the projected disturbance when present.
struct InputTrajectory {
  TimeGrid grid;
  std::vector<Eigen::MatrixXd> input;        // half_count() matrices, n2 x m_a
  std::vector<Eigen::VectorXd> disturbance;  // empty or half_count() vectors

  int actuators() const {
    return input.empty() ? 0 : static_cast<int>(input.front().cols());
  }
  const Eigen::MatrixXd& at_half(int j) const { return input[j]; }
  bool has_disturbance() const { return !disturbance.empty(); }
};

/// Samples B_N along actuator positions given by `positions_at(j, t)` for
/// half-grid index j, and optionally the disturbance column.
InputTrajectory sample_input(
    const std::function<std::vector<Eigen::Vector2d>(int, double)>&
        positions_at,
    const std::vector<double>& sigmas, const BasisSet& basis,
    const TimeGrid& grid,
    const std::optional<DisturbanceModel>& disturbance = std::nullopt,
    int box_points = 12);

}  // namespace mobipde
