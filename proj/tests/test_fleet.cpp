#include <doctest.h>

#include <cmath>
#include <random>

#include "mobipde/fleet.hpp"

using namespace mobipde;

namespace {

FleetDynamics paper_fleet() {
  return FleetDynamics::single_integrators(
      {{0.1, 0.1}, {0.125, 0.1}, {0.125, 0.125}, {0.1, 0.125}});
}

GuidanceBounds paper_bounds(const FleetDynamics& fleet) {
  return GuidanceBounds::uniform(fleet.guidance_dim(), -100.0, 100.0, 100.0,
                                 100.0);
}

}  // namespace

TEST_CASE("assembly produces block structure and the position selector") {
  const auto fleet = paper_fleet();
  CHECK(fleet.actuator_count() == 4);
  CHECK(fleet.state_dim() == 8);
  CHECK(fleet.guidance_dim() == 8);
  CHECK(fleet.alpha().cwiseAbs().maxCoeff() == 0.0);
  CHECK(fleet.beta().isIdentity(0.0));

  Eigen::VectorXd state(8);
  state << 1, 2, 3, 4, 5, 6, 7, 8;
  const auto positions = fleet.positions(state);
  CHECK(positions[0] == Eigen::Vector2d{1, 2});
  CHECK(positions[3] == Eigen::Vector2d{7, 8});
  CHECK(fleet.is_controllable());
}

TEST_CASE("controllability rank test catches a dead actuator") {
  ActuatorModel stuck;
  stuck.alpha = Eigen::MatrixXd::Zero(2, 2);
  stuck.beta = Eigen::MatrixXd::Zero(2, 1);  // no authority at all
  stuck.xi0 = Eigen::Vector2d{0.5, 0.5};
  const auto fleet = FleetDynamics::assemble({stuck});
  CHECK_FALSE(fleet.is_controllable());
}

TEST_CASE("propagation of trivial dynamics") {
  const auto fleet = paper_fleet();
  const auto grid = TimeGrid::uniform(1.0, 50);
  const auto bounds = paper_bounds(fleet);

  SUBCASE("zero guidance keeps the fleet at rest") {
    const auto traj = propagate(fleet, GuidanceProfile::zero(grid, bounds));
    CHECK((traj.states.col(50) - fleet.initial_state()).cwiseAbs().maxCoeff() ==
          0.0);
  }
  SUBCASE("constant guidance integrates exactly") {
    Eigen::VectorXd v(8);
    v << 0.8, 0.8, 0.75, 0.8, 0.75, 0.75, 0.8, 0.75;
    const auto traj =
        propagate(fleet, GuidanceProfile::constant(grid, bounds, v));
    const Eigen::VectorXd expected = fleet.initial_state() + 0.44 * v;
    CHECK((traj.at(0.44) - expected).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((traj.states.col(50) - (fleet.initial_state() + v)).cwiseAbs()
              .maxCoeff() < 1e-13);
  }
}

TEST_CASE("trajectory map is linear in the zero-state response") {
  ActuatorModel damped;
  damped.alpha = (Eigen::MatrixXd(2, 2) << -0.3, 0.1, 0.0, -0.2).finished();
  damped.beta = Eigen::MatrixXd::Identity(2, 2);
  damped.xi0 = Eigen::Vector2d{0.4, 0.6};
  const auto fleet = FleetDynamics::assemble({damped});
  const auto grid = TimeGrid::uniform(1.0, 200);
  const auto bounds = paper_bounds(fleet);

  std::mt19937 rng(11);
  std::normal_distribution<double> gauss;
  GuidanceProfile p1 = GuidanceProfile::zero(grid, bounds);
  GuidanceProfile p2 = GuidanceProfile::zero(grid, bounds);
  for (int k = 0; k < grid.node_count(); ++k) {
    for (int c = 0; c < 2; ++c) {
      p1.values(c, k) = gauss(rng);
      p2.values(c, k) = gauss(rng);
    }
  }
  const auto zero_response = [&](const GuidanceProfile& p) -> Eigen::MatrixXd {
    return propagate(fleet, p).states -
           propagate(fleet, GuidanceProfile::zero(grid, bounds)).states;
  };
  GuidanceProfile combo = p1;
  combo.values = 0.7 * p1.values - 1.3 * p2.values;
  const Eigen::MatrixXd lhs = zero_response(combo);
  const Eigen::MatrixXd rhs =
      0.7 * zero_response(p1) - 1.3 * zero_response(p2);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("trajectory map is continuous in the guidance") {
  const auto fleet = paper_fleet();
  const auto grid = TimeGrid::uniform(1.0, 100);
  const auto bounds = paper_bounds(fleet);
  std::mt19937 rng(5);
  std::normal_distribution<double> gauss;

  // Fit the constant once, then check it holds across random pairs.
  double fitted = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    GuidanceProfile p1 = GuidanceProfile::zero(grid, bounds);
    GuidanceProfile p2 = GuidanceProfile::zero(grid, bounds);
    for (int k = 0; k < grid.node_count(); ++k) {
      for (int c = 0; c < 8; ++c) {
        p1.values(c, k) = gauss(rng);
        p2.values(c, k) = gauss(rng);
      }
    }
    const double state_gap = (propagate(fleet, p1).states -
                              propagate(fleet, p2).states)
                                 .cwiseAbs()
                                 .maxCoeff();
    const double guidance_gap = (p1.values - p2.values).cwiseAbs().maxCoeff();
    const double ratio = state_gap / guidance_gap;
    if (trial == 0) {
      fitted = ratio;
    } else {
      CHECK(ratio <= 5.0 * fitted + 1e-12);
    }
  }
}

TEST_CASE("guidance validation") {
  const auto fleet = paper_fleet();
  const auto grid = TimeGrid::uniform(1.0, 1000);
  const auto bounds = paper_bounds(fleet);

  SUBCASE("zero guidance is feasible") {
    CHECK(validate_guidance(GuidanceProfile::zero(grid, bounds), fleet)
              .empty());
  }
  SUBCASE("box violation is reported with its component") {
    auto p = GuidanceProfile::zero(grid, bounds);
    p.values(3, 17) = 150.0;
    const auto violations = validate_guidance(p, fleet);
    REQUIRE(!violations.empty());
    bool found_box = false;
    for (const auto& v : violations) {
      if (v.kind == GuidanceViolation::Kind::Box) {
        found_box = true;
        CHECK(v.index == 3);
        CHECK(v.step == 17);
        CHECK(v.amount == doctest::Approx(50.0));
      }
    }
    CHECK(found_box);
  }
  SUBCASE("a step of 30 over dt = 0.001 violates the rate bound") {
    auto p = GuidanceProfile::zero(grid, bounds);
    p.values(0, 501) = 30.0;  // jump of 30 > a_max * dt = 0.1
    const auto violations = validate_guidance(p, fleet);
    bool found_rate = false;
    for (const auto& v : violations) {
      found_rate |= v.kind == GuidanceViolation::Kind::Rate;
    }
    CHECK(found_rate);
  }
  SUBCASE("per-actuator magnitude uses the 2-norm") {
    auto p = GuidanceProfile::zero(grid, bounds);
    p.values(0, 5) = 90.0;
    p.values(1, 5) = 90.0;  // inside the box, norm 127 > p_max
    const auto violations = validate_guidance(p, fleet);
    bool found_magnitude = false;
    for (const auto& v : violations) {
      if (v.kind == GuidanceViolation::Kind::Magnitude) {
        found_magnitude = true;
        CHECK(v.index == 0);
      }
    }
    CHECK(found_magnitude);
  }
}

TEST_CASE("guidance projection") {
  const auto fleet = paper_fleet();
  const auto grid = TimeGrid::uniform(1.0, 200);
  const auto bounds = paper_bounds(fleet);

  SUBCASE("feasible profiles are unchanged") {
    auto p = GuidanceProfile::zero(grid, bounds);
    p.values.setConstant(3.0);
    const auto projected = project_guidance(p, fleet);
    CHECK((projected.values - p.values).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("box clipping") {
    auto p = GuidanceProfile::zero(grid, bounds);
    p.values.setConstant(150.0);
    const auto projected = project_guidance(p, fleet);
    CHECK(projected.values.maxCoeff() <= 100.0 + 1e-12);
  }
  SUBCASE("projection is idempotent and always lands in the feasible set") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> wild(-400.0, 400.0);
    for (int trial = 0; trial < 100; ++trial) {
      auto p = GuidanceProfile::zero(grid, bounds);
      for (int k = 0; k < grid.node_count(); ++k) {
        for (int c = 0; c < 8; ++c) p.values(c, k) = wild(rng);
      }
      const auto projected = project_guidance(p, fleet);
      CHECK(validate_guidance(projected, fleet).empty());
      const auto twice = project_guidance(projected, fleet);
      CHECK((twice.values - projected.values).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("profile resampling preserves the piecewise linear shape") {
  const auto fleet = paper_fleet();
  const auto bounds = paper_bounds(fleet);
  const auto coarse_grid = TimeGrid::uniform(1.0, 10);
  auto p = GuidanceProfile::zero(coarse_grid, bounds);
  for (int k = 0; k <= 10; ++k) p.values.col(k).setConstant(k * 0.1);
  const auto fine = p.resampled(TimeGrid::uniform(1.0, 40));
  CHECK(fine.values(0, 0) == doctest::Approx(0.0));
  CHECK(fine.values(0, 20) == doctest::Approx(0.5));
  CHECK(fine.values(3, 33) == doctest::Approx(0.825));
}
