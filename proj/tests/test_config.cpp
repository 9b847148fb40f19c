#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "mobipde/config.hpp"

using namespace mobipde;

TEST_CASE("empty text yields the paper Dirichlet defaults") {
  const auto config = parse_config("");
  CHECK(config.bc == BoundaryCondition::Dirichlet);
  CHECK(config.n_modes == 13);
  CHECK(config.t_f == 1.0);
  CHECK(config.grid_steps == 1000);
  CHECK(config.diffusivity == 0.05);
  CHECK(config.velocity == Eigen::Vector2d{0.1, -0.1});
  CHECK(config.control_weight == 0.1);
  CHECK(config.actuator_starts.size() == 4);
  CHECK(config.actuator_starts[1] == Eigen::Vector2d{0.125, 0.1});
  CHECK(config.kernel_sigma == 0.05);
  CHECK(config.p_max == 100.0);
  CHECK(config.disturbance);
  // Peclet number of the default transport: |v| / a ~ 2.83.
  CHECK(config.velocity.norm() / config.diffusivity ==
        doctest::Approx(2.8284).epsilon(1e-4));
}

TEST_CASE("presets") {
  const auto neumann = ScenarioConfig::preset_config("neumann-paper");
  CHECK(neumann.bc == BoundaryCondition::Neumann);
  CHECK(neumann.n_modes == 13);
  const auto via_file = parse_config("preset = neumann-paper\n");
  CHECK(via_file.bc == BoundaryCondition::Neumann);
  CHECK_THROWS_AS(ScenarioConfig::preset_config("unknown"),
                  std::invalid_argument);
}

TEST_CASE("parse errors carry the line number") {
  SUBCASE("unknown keys are rejected") {
    CHECK_THROWS_WITH_AS(parse_config("\nfoo = 3\n", "test.cfg"),
                         doctest::Contains("test.cfg:2"),
                         std::invalid_argument);
  }
  SUBCASE("malformed numbers are rejected") {
    CHECK_THROWS_WITH_AS(parse_config("t_f = fast\n", "test.cfg"),
                         doctest::Contains("test.cfg:1"),
                         std::invalid_argument);
  }
  SUBCASE("comments and blank lines are fine") {
    CHECK_NOTHROW(parse_config("# comment\n\nn_modes = 5  # trailing\n"));
  }
}

TEST_CASE("validation names the violated constraint") {
  CHECK_THROWS_WITH_AS(parse_config("kernel_sigma = -0.05\n"),
                       doctest::Contains("kernel_sigma"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config("n_modes = 0\n"),
                       doctest::Contains("n_modes"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config("actuator_starts = 1.5 0.5\n"),
                       doctest::Contains("unit square"),
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config("guidance_box = 50 40\n"),
                       doctest::Contains("interval"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config("optimizer.shrink = 1.5\n"),
                       doctest::Contains("OptimizerConfig"),
                       std::invalid_argument);
}

TEST_CASE("save / load round trip") {
  ScenarioConfig config;
  config.bc = BoundaryCondition::Neumann;
  config.n_modes = 9;
  config.velocity = {0.25, 0.125};
  config.actuator_starts = {{0.3, 0.3}, {0.6, 0.7}};
  config.optimizer.max_iters = 77;
  config.disturbance = false;

  const std::string path = "roundtrip_test.cfg";
  save_config(config, path);
  const auto loaded = load_config(path);
  std::remove(path.c_str());

  CHECK(loaded.serialize() == config.serialize());
  CHECK(loaded.hash() == config.hash());
  CHECK(loaded.bc == BoundaryCondition::Neumann);
  CHECK(loaded.optimizer.max_iters == 77);
  CHECK_FALSE(loaded.disturbance);
}

TEST_CASE("hash tracks content") {
  ScenarioConfig a, b;
  CHECK(a.hash() == b.hash());
  b.n_modes = 14;
  CHECK(a.hash() != b.hash());
}

TEST_CASE("initial condition presets") {
  ScenarioConfig config;
  CHECK(config.initial_field()(0.5, 0.5) == doctest::Approx(20.0));
  config.initial_condition = "zero";
  CHECK(config.initial_field()(0.3, 0.9) == 0.0);
  config.initial_condition = "bogus";
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("missing files are reported") {
  CHECK_THROWS_AS(load_config("no/such/file.cfg"), std::invalid_argument);
}
