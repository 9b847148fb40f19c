#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "mobipde/basis.hpp"
#include "mobipde/sweep.hpp"

namespace mobipde {

/// Full description of a benchmark scenario.  Defaults reproduce the
/// Dirichlet benchmark; the "neumann-paper" preset flips the boundary
/// condition and keeps everything else.
struct ScenarioConfig {
  std::string preset = "dirichlet-paper";
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  int n_modes = 13;
  int quad_points = 0;  // 0 = choose from n_modes
  double t_f = 1.0;
  int grid_steps = 1000;  // simulation/evaluation grid
  double diffusivity = 0.05;
  Eigen::Vector2d velocity{0.1, -0.1};
  double control_weight = 0.1;       // R = w I
  double guidance_cost_coeff = 0.1;  // g(p,t) = c p'p
  std::vector<Eigen::Vector2d> actuator_starts{
      {0.1, 0.1}, {0.125, 0.1}, {0.125, 0.125}, {0.1, 0.125}};
  double kernel_sigma = 0.05;
  double guidance_box_lower = -100.0;
  double guidance_box_upper = 100.0;
  double p_max = 100.0;
  double a_max = 100.0;
  bool disturbance = true;
  double disturbance_amplitude = 0.5;
  double disturbance_sigma = 0.05;
  std::string initial_condition = "paper-bump";  // or "zero"
  int kernel_box_points = 12;
  OptimizerConfig optimizer;

  /// Throws std::invalid_argument naming the violated constraint.
  void validate() const;

  /// The named initial field (320(x-x^2)(y-y^2) for "paper-bump").
  SpatialField initial_field() const;

  /// Canonical key = value serialization (round-trips through load_config).
  std::string serialize() const;
  /// FNV-1a hash of the canonical serialization, for output provenance.
  std::uint64_t hash() const;

  static ScenarioConfig preset_config(const std::string& name);
};

/// Parses a key = value file ('#' comments, blank lines allowed).  Unknown
/// keys and malformed values are rejected with the line number; an empty
/// file yields the default (paper Dirichlet) scenario.
ScenarioConfig load_config(const std::string& path);
ScenarioConfig parse_config(const std::string& text,
                            const std::string& origin = "<string>");
void save_config(const ScenarioConfig& config, const std::string& path);

}  // namespace mobipde
