#include "mobipde/riccati.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace mobipde {

LQRWeights LQRWeights::identity_state(int state_dim, int control_dim,
                                      double control_scale) {
  LQRWeights w;
  w.state = Eigen::MatrixXd::Identity(state_dim, state_dim);
  w.terminal = Eigen::MatrixXd::Identity(state_dim, state_dim);
  w.control = control_scale *
              Eigen::MatrixXd::Identity(control_dim, control_dim);
  return w;
}

void LQRWeights::validate() const {
  const auto check_symmetric = [](const Eigen::MatrixXd& m, const char* name) {
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
      throw std::invalid_argument(std::string("LQRWeights: ") + name +
                                  " is not symmetric");
    }
  };
  check_symmetric(state, "Q");
  check_symmetric(terminal, "Q_f");
  check_symmetric(control, "R");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.compute(state, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw std::invalid_argument("LQRWeights: Q must be positive semidefinite");
  }
  es.compute(terminal, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) {
    throw std::invalid_argument(
        "LQRWeights: Q_f must be positive semidefinite");
  }
  es.compute(control, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < 1e-12) {
    throw std::invalid_argument("LQRWeights: R must be positive definite");
  }
}

Eigen::MatrixXd RiccatiSolution::pi_interpolated(double t) const {
  const double s = std::clamp(t / grid.dt(), 0.0,
                              static_cast<double>(grid.steps));
  const int k = std::min(static_cast<int>(s), grid.steps - 1);
  const double w = s - k;
  return (1.0 - w) * pi.at(k) + w * pi.at(k + 1);
}

RiccatiSolution solve_riccati(const Eigen::MatrixXd& a,
                              const InputTrajectory& input,
                              const LQRWeights& weights,
                              const RiccatiOptions& options) {
  const int n = static_cast<int>(a.rows());
  const TimeGrid& grid = input.grid;
  const double h = grid.dt();
  weights.validate();
  if (input.input.size() != static_cast<std::size_t>(grid.half_count())) {
    throw std::invalid_argument("solve_riccati: input samples do not match grid");
  }

  const Eigen::MatrixXd r_inv = weights.control.inverse();
  const Eigen::MatrixXd a_t = a.transpose();

  RiccatiSolution sol;
  sol.grid = grid;
  if (options.store_matrices) sol.pi.resize(grid.node_count());
  if (options.store_gains) sol.gains.resize(grid.node_count());

  Eigen::MatrixXd pi = 0.5 * (weights.terminal + weights.terminal.transpose());
  Eigen::MatrixXd t_buf(n, n), k1(n, n), k2(n, n), k3(n, n), k4(n, n),
      stage(n, n);
  Eigen::MatrixXd w_buf(n, input.actuators());

  // Pi_dot at a half-grid sample; uses -(T + T^T) with T = A^T Pi so the
  // result is symmetric whenever Pi is.
  const auto rhs = [&](const Eigen::MatrixXd& p, int half_index,
                       Eigen::MatrixXd& out) {
    const Eigen::MatrixXd& b = input.at_half(half_index);
    t_buf.noalias() = a_t * p;
    w_buf.noalias() = p * b;
    out.noalias() = w_buf * r_inv * w_buf.transpose();
    out -= t_buf;
    out -= t_buf.transpose();
    out -= weights.state;
  };

  const auto record = [&](int k) {
    if (options.store_matrices) sol.pi[k] = pi;
    if (options.store_gains) {
      sol.gains[k].noalias() = r_inv * input.at_half(2 * k).transpose() * pi;
    }
  };

  record(grid.steps);
  for (int k = grid.steps - 1; k >= 0; --k) {
    rhs(pi, 2 * k + 2, k1);
    stage = pi - 0.5 * h * k1;
    rhs(stage, 2 * k + 1, k2);
    stage = pi - 0.5 * h * k2;
    rhs(stage, 2 * k + 1, k3);
    stage = pi - h * k3;
    rhs(stage, 2 * k, k4);
    pi -= (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double asym = (pi - pi.transpose()).cwiseAbs().maxCoeff();
    sol.max_asymmetry = std::max(sol.max_asymmetry, asym);
    pi = 0.5 * (pi + pi.transpose()).eval();

    if (pi.cwiseAbs().maxCoeff() > options.blowup_ceiling) {
      throw RiccatiBlowup("solve_riccati: |Pi| exceeded ceiling at t = " +
                          std::to_string(grid.node(k)));
    }
    record(k);
  }
  sol.pi0 = pi;
  return sol;
}

double pde_cost_via_riccati(const CoefficientVector& z0,
                            const RiccatiSolution& solution) {
  return z0.dot(solution.pi0 * z0);
}

FeedbackLaw::FeedbackLaw(
    TimeGrid grid,
    std::shared_ptr<const std::vector<Eigen::MatrixXd>> gains)
    : grid_(grid), gains_(std::move(gains)) {}

Eigen::VectorXd FeedbackLaw::operator()(double t,
                                        const Eigen::VectorXd& z) const {
  const double s = std::clamp(t / grid_.dt(), 0.0,
                              static_cast<double>(grid_.steps));
  const int k = std::min(static_cast<int>(s), grid_.steps - 1);
  const double w = s - k;
  return -(((1.0 - w) * (*gains_)[k] + w * (*gains_)[k + 1]) * z);
}

Eigen::MatrixXd FeedbackLaw::gain_at_half(int j) const {
  if (j % 2 == 0) return (*gains_)[j / 2];
  return 0.5 * ((*gains_)[j / 2] + (*gains_)[j / 2 + 1]);
}

FeedbackLaw synthesize_feedback(const RiccatiSolution& solution,
                                const LQRWeights& weights,
                                const InputTrajectory& input) {
  if (!(solution.grid == input.grid)) {
    throw std::invalid_argument(
        "synthesize_feedback: solution and input grids differ");
  }
  if (!solution.gains.empty()) {
    return FeedbackLaw(solution.grid,
                       std::make_shared<const std::vector<Eigen::MatrixXd>>(
                           solution.gains));
  }
  if (solution.pi.empty()) {
    throw std::invalid_argument(
        "synthesize_feedback: solution stores neither gains nor matrices");
  }
  const Eigen::MatrixXd r_inv = weights.control.inverse();
  std::vector<Eigen::MatrixXd> gains(solution.grid.node_count());
  for (int k = 0; k < solution.grid.node_count(); ++k) {
    gains[k] = r_inv * input.at_half(2 * k).transpose() * solution.pi[k];
  }
  return FeedbackLaw(solution.grid,
                     std::make_shared<const std::vector<Eigen::MatrixXd>>(
                         std::move(gains)));
}

Eigen::VectorXd OpenLoopControl::at(double t) const {
  const int halves = 2 * grid.steps;
  const double s = std::clamp(t / (0.5 * grid.dt()), 0.0,
                              static_cast<double>(halves));
  const int j = std::min(static_cast<int>(s), halves - 1);
  const double w = s - j;
  return (1.0 - w) * values_half.col(j) + w * values_half.col(j + 1);
}

OpenLoopControl OpenLoopControl::from_nodes(
    const TimeGrid& grid, const Eigen::MatrixXd& node_values) {
  OpenLoopControl u{grid, Eigen::MatrixXd(node_values.rows(),
                                          grid.half_count())};
  for (int j = 0; j < grid.half_count(); ++j) {
    if (j % 2 == 0) {
      u.values_half.col(j) = node_values.col(j / 2);
    } else {
      u.values_half.col(j) =
          0.5 * (node_values.col(j / 2) + node_values.col(j / 2 + 1));
    }
  }
  return u;
}

namespace {

Eigen::VectorXd eval_control(const ControlLaw& law, int half_index, double t,
                             const Eigen::VectorXd& z, int m,
                             const BasisSet* basis_hint) {
  return std::visit(
      [&](const auto& c) -> Eigen::VectorXd {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return Eigen::VectorXd::Zero(m);
        } else if constexpr (std::is_same_v<T, OpenLoopControl>) {
          return c.at_half(half_index);
        } else if constexpr (std::is_same_v<T, FeedbackLaw>) {
          return -(c.gain_at_half(half_index) * z);
        } else {
          // Local proportional feedback on the loop's own field.
          (void)basis_hint;
          const Eigen::VectorXd xi = c.trajectory.at_half(half_index);
          const auto pos = c.fleet->positions(xi);
          Eigen::VectorXd u(m);
          for (int i = 0; i < m; ++i) {
            const double x = std::clamp(pos[i].x(), 0.0, 1.0);
            const double y = std::clamp(pos[i].y(), 0.0, 1.0);
            u[i] = c.gain * evaluate_field(z, *c.basis, x, y);
          }
          return u;
        }
      },
      law);
}

}  // namespace

SimResult simulate_loop(const Eigen::MatrixXd& a, const InputTrajectory& input,
                        const ControlLaw& control, const CoefficientVector& z0,
                        const LQRWeights& weights) {
  const TimeGrid& grid = input.grid;
  const double h = grid.dt();
  const int n2 = static_cast<int>(a.rows());
  const int m = input.actuators();
  if (const auto* fb = std::get_if<FeedbackLaw>(&control);
      fb != nullptr && !(fb->grid() == grid)) {
    throw std::invalid_argument("simulate_loop: feedback law grid mismatch");
  }
  const BasisSet* basis_hint =
      std::holds_alternative<LocalFieldFeedback>(control)
          ? std::get<LocalFieldFeedback>(control).basis
          : nullptr;

  SimResult result;
  result.grid = grid;
  result.states.resize(n2, grid.node_count());
  result.controls.resize(m, grid.node_count());
  result.controls_half.resize(m, grid.half_count());
  result.norm_history.resize(grid.node_count());

  Eigen::VectorXd z = z0;
  Eigen::VectorXd k1(n2), k2(n2), k3(n2), k4(n2), u(m);

  const auto rhs = [&](const Eigen::VectorXd& state, int half_index,
                       Eigen::VectorXd& out, Eigen::VectorXd& u_out) {
    const double t = grid.half_time(half_index);
    u_out = eval_control(control, half_index, t, state, m, basis_hint);
    out.noalias() = a * state;
    out.noalias() += input.at_half(half_index) * u_out;
    if (input.has_disturbance()) out += input.disturbance[half_index];
  };

  Eigen::VectorXd u_stage(m);
  double prev_integrand = 0.0;
  for (int k = 0; k <= grid.steps; ++k) {
    rhs(z, 2 * k, k1, u);
    result.states.col(k) = z;
    result.controls.col(k) = u;
    result.controls_half.col(2 * k) = u;
    result.norm_history[k] = z.norm();
    const double integrand =
        z.dot(weights.state * z) + u.dot(weights.control * u);
    if (k > 0) result.running_cost += 0.5 * h * (prev_integrand + integrand);
    prev_integrand = integrand;
    if (k == grid.steps) break;

    Eigen::VectorXd z2 = z + 0.5 * h * k1;
    rhs(z2, 2 * k + 1, k2, u_stage);
    result.controls_half.col(2 * k + 1) = u_stage;
    z2 = z + 0.5 * h * k2;
    rhs(z2, 2 * k + 1, k3, u_stage);
    z2 = z + h * k3;
    rhs(z2, 2 * k + 2, k4, u_stage);
    z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  result.terminal_cost = z.dot(weights.terminal * z);
  return result;
}

}  // namespace mobipde
