#include "mobipde/fleet.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mobipde {

FleetDynamics FleetDynamics::assemble(std::vector<ActuatorModel> actuators) {
  if (actuators.empty()) {
    throw std::invalid_argument("FleetDynamics: need at least one actuator");
  }
  int n = 0, m = 0;
  for (const auto& a : actuators) {
    if (a.alpha.rows() != a.alpha.cols() || a.alpha.rows() < 2 ||
        a.beta.rows() != a.alpha.rows() || a.xi0.size() != a.alpha.rows()) {
      throw std::invalid_argument("FleetDynamics: inconsistent actuator dims");
    }
    if (a.kernel_sigma <= 0.0) {
      throw std::invalid_argument("FleetDynamics: kernel_sigma must be > 0");
    }
    n += static_cast<int>(a.alpha.rows());
    m += static_cast<int>(a.beta.cols());
  }

  FleetDynamics fleet;
  fleet.alpha_ = Eigen::MatrixXd::Zero(n, n);
  fleet.beta_ = Eigen::MatrixXd::Zero(n, m);
  fleet.xi0_ = Eigen::VectorXd::Zero(n);
  fleet.selector_ =
      Eigen::MatrixXd::Zero(2 * static_cast<int>(actuators.size()), n);
  int row = 0, col = 0, idx = 0;
  for (const auto& a : actuators) {
    const int ni = static_cast<int>(a.alpha.rows());
    const int mi = static_cast<int>(a.beta.cols());
    fleet.alpha_.block(row, row, ni, ni) = a.alpha;
    fleet.beta_.block(row, col, ni, mi) = a.beta;
    fleet.xi0_.segment(row, ni) = a.xi0;
    fleet.selector_(2 * idx, row) = 1.0;
    fleet.selector_(2 * idx + 1, row + 1) = 1.0;
    fleet.guidance_offsets_.push_back(col);
    row += ni;
    col += mi;
    ++idx;
  }
  fleet.guidance_offsets_.push_back(col);
  fleet.actuators_ = std::move(actuators);
  return fleet;
}

FleetDynamics FleetDynamics::single_integrators(
    const std::vector<Eigen::Vector2d>& starts, double kernel_sigma) {
  std::vector<ActuatorModel> models;
  models.reserve(starts.size());
  for (const auto& s : starts) {
    ActuatorModel m;
    m.alpha = Eigen::MatrixXd::Zero(2, 2);
    m.beta = Eigen::MatrixXd::Identity(2, 2);
    m.xi0 = s;
    m.kernel_sigma = kernel_sigma;
    models.push_back(std::move(m));
  }
  return assemble(std::move(models));
}

std::vector<double> FleetDynamics::kernel_sigmas() const {
  std::vector<double> sigmas;
  sigmas.reserve(actuators_.size());
  for (const auto& a : actuators_) sigmas.push_back(a.kernel_sigma);
  return sigmas;
}

std::pair<int, int> FleetDynamics::guidance_block(int i) const {
  return {guidance_offsets_[i], guidance_offsets_[i + 1] - guidance_offsets_[i]};
}

std::vector<Eigen::Vector2d> FleetDynamics::positions(
    const Eigen::VectorXd& state) const {
  const Eigen::VectorXd stacked = selector_ * state;
  std::vector<Eigen::Vector2d> pos(actuators_.size());
  for (int i = 0; i < actuator_count(); ++i) {
    pos[i] = stacked.segment<2>(2 * i);
  }
  return pos;
}

bool FleetDynamics::is_controllable() const {
  for (const auto& a : actuators_) {
    const int ni = static_cast<int>(a.alpha.rows());
    const int mi = static_cast<int>(a.beta.cols());
    Eigen::MatrixXd ctrb(ni, ni * mi);
    Eigen::MatrixXd block = a.beta;
    for (int k = 0; k < ni; ++k) {
      ctrb.block(0, k * mi, ni, mi) = block;
      block = a.alpha * block;
    }
    if (Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(ctrb).rank() < ni) {
      return false;
    }
  }
  return true;
}

GuidanceBounds GuidanceBounds::uniform(int dim, double lo, double hi,
                                       double p_max, double a_max) {
  GuidanceBounds b;
  b.lower = Eigen::VectorXd::Constant(dim, lo);
  b.upper = Eigen::VectorXd::Constant(dim, hi);
  b.p_max = p_max;
  b.a_max = a_max;
  return b;
}

GuidanceProfile GuidanceProfile::zero(const TimeGrid& grid,
                                      const GuidanceBounds& b) {
  return {grid, Eigen::MatrixXd::Zero(b.lower.size(), grid.node_count()), b};
}

GuidanceProfile GuidanceProfile::constant(const TimeGrid& grid,
                                          const GuidanceBounds& b,
                                          const Eigen::VectorXd& value) {
  GuidanceProfile p{grid, {}, b};
  p.values = value.replicate(1, grid.node_count());
  return p;
}

namespace {

Eigen::VectorXd sample_linear(const Eigen::MatrixXd& values,
                              const TimeGrid& grid, double t) {
  const double s = std::clamp(t / grid.dt(), 0.0, double(grid.steps));
  const int k = std::min(static_cast<int>(s), grid.steps - 1);
  const double w = s - k;
  return (1.0 - w) * values.col(k) + w * values.col(k + 1);
}

}  // namespace

Eigen::VectorXd GuidanceProfile::at(double t) const {
  return sample_linear(values, grid, t);
}

Eigen::VectorXd GuidanceProfile::at_half(int j) const {
  if (j % 2 == 0) return values.col(j / 2);
  return 0.5 * (values.col(j / 2) + values.col(j / 2 + 1));
}

GuidanceProfile GuidanceProfile::resampled(const TimeGrid& target) const {
  if (target == grid) return *this;
  GuidanceProfile out{target, Eigen::MatrixXd(values.rows(),
                                              target.node_count()), bounds};
  for (int k = 0; k < target.node_count(); ++k) {
    out.values.col(k) = at(target.node(k));
  }
  return out;
}

Eigen::VectorXd TrajectoryProfile::at(double t) const {
  return sample_linear(states, grid, t);
}

Eigen::VectorXd TrajectoryProfile::at_half(int j) const {
  if (j % 2 == 0) return states.col(j / 2);
  return 0.5 * (states.col(j / 2) + states.col(j / 2 + 1));
}

TrajectoryProfile propagate(const FleetDynamics& fleet,
                            const GuidanceProfile& guidance) {
  const TimeGrid& grid = guidance.grid;
  const double h = grid.dt();
  TrajectoryProfile traj{grid,
                         Eigen::MatrixXd(fleet.state_dim(), grid.node_count())};
  Eigen::VectorXd xi = fleet.initial_state();
  traj.states.col(0) = xi;

  const auto rhs = [&](const Eigen::VectorXd& state, int half_index) {
    return (fleet.alpha() * state + fleet.beta() * guidance.at_half(half_index))
        .eval();
  };

  Eigen::VectorXd k1, k2, k3, k4;
  for (int k = 0; k < grid.steps; ++k) {
    k1 = rhs(xi, 2 * k);
    k2 = rhs(xi + 0.5 * h * k1, 2 * k + 1);
    k3 = rhs(xi + 0.5 * h * k2, 2 * k + 1);
    k4 = rhs(xi + h * k3, 2 * k + 2);
    xi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    traj.states.col(k + 1) = xi;
  }
  return traj;
}

std::vector<GuidanceViolation> validate_guidance(const GuidanceProfile& p,
                                                 const FleetDynamics& fleet) {
  std::vector<GuidanceViolation> violations;
  const auto& b = p.bounds;
  const double h = p.grid.dt();
  for (int k = 0; k < p.grid.node_count(); ++k) {
    const Eigen::VectorXd v = p.values.col(k);
    for (int c = 0; c < v.size(); ++c) {
      if (v[c] < b.lower[c] - 1e-12 || v[c] > b.upper[c] + 1e-12) {
        const double over =
            std::max(b.lower[c] - v[c], v[c] - b.upper[c]);
        violations.push_back(
            {GuidanceViolation::Kind::Box, k, c, over});
      }
    }
    for (int i = 0; i < fleet.actuator_count(); ++i) {
      const auto [off, len] = fleet.guidance_block(i);
      const double norm = v.segment(off, len).norm();
      if (norm > b.p_max + 1e-12) {
        violations.push_back(
            {GuidanceViolation::Kind::Magnitude, k, i, norm - b.p_max});
      }
    }
    if (k > 0) {
      const double rate = (v - p.values.col(k - 1)).norm();
      if (rate > b.a_max * h + 1e-12) {
        violations.push_back(
            {GuidanceViolation::Kind::Rate, k, -1, rate - b.a_max * h});
      }
    }
  }
  return violations;
}

GuidanceProfile project_guidance(GuidanceProfile p,
                                 const FleetDynamics& fleet) {
  const auto& b = p.bounds;
  const double h = p.grid.dt();
  for (int k = 0; k < p.grid.node_count(); ++k) {
    auto col = p.values.col(k);
    col = col.cwiseMax(b.lower).cwiseMin(b.upper);
    for (int i = 0; i < fleet.actuator_count(); ++i) {
      const auto [off, len] = fleet.guidance_block(i);
      const double norm = col.segment(off, len).norm();
      if (norm > b.p_max) col.segment(off, len) *= b.p_max / norm;
    }
    if (k > 0) {
      // Forward rate-limit pass: shrink the increment toward the previous
      // node.  Both endpoints are feasible, so the result stays in the box
      // and the p_max ball by convexity.
      const Eigen::VectorXd prev = p.values.col(k - 1);
      const double rate = (col - prev).norm();
      const double cap = b.a_max * h;
      if (rate > cap) col = prev + (cap / rate) * (col - prev);
    }
  }
  return p;
}

}  // namespace mobipde
