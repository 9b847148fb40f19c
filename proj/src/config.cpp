#include "mobipde/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mobipde {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

[[noreturn]] void fail(const std::string& origin, int line,
                       const std::string& message) {
  throw std::invalid_argument(origin + ":" + std::to_string(line) + ": " +
                              message);
}

double parse_double(const std::string& origin, int line,
                    const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    fail(origin, line, "expected a number, got '" + value + "'");
  }
  if (trim(value.substr(used)) != "") {
    fail(origin, line, "trailing characters after number in '" + value + "'");
  }
  return v;
}

int parse_int(const std::string& origin, int line, const std::string& value) {
  const double v = parse_double(origin, line, value);
  if (v != std::floor(v)) fail(origin, line, "expected an integer");
  return static_cast<int>(v);
}

bool parse_bool(const std::string& origin, int line,
                const std::string& value) {
  if (value == "true" || value == "on" || value == "1") return true;
  if (value == "false" || value == "off" || value == "0") return false;
  fail(origin, line, "expected a boolean, got '" + value + "'");
}

std::vector<double> parse_numbers(const std::string& origin, int line,
                                  const std::string& value) {
  std::istringstream is(value);
  std::vector<double> out;
  std::string token;
  while (is >> token) out.push_back(parse_double(origin, line, token));
  return out;
}

std::vector<Eigen::Vector2d> parse_points(const std::string& origin, int line,
                                          const std::string& value) {
  std::vector<Eigen::Vector2d> points;
  std::istringstream groups(value);
  std::string group;
  while (std::getline(groups, group, ';')) {
    group = trim(group);
    if (group.empty()) continue;
    const auto nums = parse_numbers(origin, line, group);
    if (nums.size() != 2) fail(origin, line, "each point needs two numbers");
    points.emplace_back(nums[0], nums[1]);
  }
  return points;
}

}  // namespace

void ScenarioConfig::validate() const {
  const auto require = [](bool ok, const char* what) {
    if (!ok) {
      throw std::invalid_argument(std::string("ScenarioConfig: ") + what);
    }
  };
  require(n_modes >= 1, "n_modes must be >= 1");
  require(quad_points >= 0, "quad_points must be >= 0");
  require(t_f > 0.0, "t_f must be > 0");
  require(grid_steps >= 1, "grid_steps must be >= 1");
  require(diffusivity > 0.0, "diffusivity must be > 0");
  require(control_weight > 0.0, "control_weight must be > 0");
  require(guidance_cost_coeff >= 0.0, "guidance_cost_coeff must be >= 0");
  require(!actuator_starts.empty(), "need at least one actuator");
  for (const auto& s : actuator_starts) {
    require(s.x() >= 0.0 && s.x() <= 1.0 && s.y() >= 0.0 && s.y() <= 1.0,
            "actuator starts must lie in the unit square");
  }
  require(kernel_sigma > 0.0, "kernel_sigma must be > 0");
  require(guidance_box_lower < guidance_box_upper,
          "guidance box must be a nonempty interval");
  require(guidance_box_lower <= 0.0 && guidance_box_upper >= 0.0,
          "guidance box must contain zero");
  require(p_max > 0.0, "p_max must be > 0");
  require(a_max > 0.0, "a_max must be > 0");
  require(disturbance_amplitude >= 0.0,
          "disturbance_amplitude must be >= 0");
  require(disturbance_sigma > 0.0, "disturbance_sigma must be > 0");
  require(initial_condition == "paper-bump" || initial_condition == "zero",
          "unknown initial_condition preset");
  require(kernel_box_points >= 2, "kernel_box_points must be >= 2");
  optimizer.validate();
}

SpatialField ScenarioConfig::initial_field() const {
  if (initial_condition == "zero") {
    return [](double, double) { return 0.0; };
  }
  return [](double x, double y) {
    return 320.0 * (x - x * x) * (y - y * y);
  };
}

std::string ScenarioConfig::serialize() const {
  std::ostringstream os;
  os << "bc = " << to_string(bc) << "\n";
  os << "n_modes = " << n_modes << "\n";
  os << "quad_points = " << quad_points << "\n";
  os << "t_f = " << format_double(t_f) << "\n";
  os << "grid_steps = " << grid_steps << "\n";
  os << "diffusivity = " << format_double(diffusivity) << "\n";
  os << "velocity = " << format_double(velocity.x()) << " "
     << format_double(velocity.y()) << "\n";
  os << "control_weight = " << format_double(control_weight) << "\n";
  os << "guidance_cost_coeff = " << format_double(guidance_cost_coeff) << "\n";
  os << "actuator_starts = ";
  for (std::size_t i = 0; i < actuator_starts.size(); ++i) {
    if (i > 0) os << "; ";
    os << format_double(actuator_starts[i].x()) << " "
       << format_double(actuator_starts[i].y());
  }
  os << "\n";
  os << "kernel_sigma = " << format_double(kernel_sigma) << "\n";
  os << "guidance_box = " << format_double(guidance_box_lower) << " "
     << format_double(guidance_box_upper) << "\n";
  os << "p_max = " << format_double(p_max) << "\n";
  os << "a_max = " << format_double(a_max) << "\n";
  os << "disturbance = " << (disturbance ? "true" : "false") << "\n";
  os << "disturbance_amplitude = " << format_double(disturbance_amplitude)
     << "\n";
  os << "disturbance_sigma = " << format_double(disturbance_sigma) << "\n";
  os << "initial_condition = " << initial_condition << "\n";
  os << "kernel_box_points = " << kernel_box_points << "\n";
  os << "optimizer.max_iters = " << optimizer.max_iters << "\n";
  os << "optimizer.gradient_tolerance = "
     << format_double(optimizer.gradient_tolerance) << "\n";
  os << "optimizer.initial_step = " << format_double(optimizer.initial_step)
     << "\n";
  os << "optimizer.shrink = " << format_double(optimizer.shrink) << "\n";
  os << "optimizer.sufficient_decrease = "
     << format_double(optimizer.sufficient_decrease) << "\n";
  os << "optimizer.max_backtracks = " << optimizer.max_backtracks << "\n";
  os << "optimizer.grid_steps = " << optimizer.grid_steps << "\n";
  return os.str();
}

std::uint64_t ScenarioConfig::hash() const {
  const std::string text = serialize();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

ScenarioConfig ScenarioConfig::preset_config(const std::string& name) {
  ScenarioConfig config;
  config.preset = name;
  if (name == "dirichlet-paper") {
    config.bc = BoundaryCondition::Dirichlet;
  } else if (name == "neumann-paper") {
    config.bc = BoundaryCondition::Neumann;
  } else {
    throw std::invalid_argument("unknown preset '" + name + "'");
  }
  return config;
}

ScenarioConfig parse_config(const std::string& text,
                            const std::string& origin) {
  ScenarioConfig config;
  std::istringstream is(text);
  std::string raw;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    const auto comment = raw.find('#');
    if (comment != std::string::npos) raw = raw.substr(0, comment);
    raw = trim(raw);
    if (raw.empty()) continue;
    const auto eq = raw.find('=');
    if (eq == std::string::npos) fail(origin, line, "expected 'key = value'");
    const std::string key = trim(raw.substr(0, eq));
    const std::string value = trim(raw.substr(eq + 1));
    if (key.empty() || value.empty()) {
      fail(origin, line, "expected 'key = value'");
    }

    if (key == "preset") {
      config = ScenarioConfig::preset_config(value);
    } else if (key == "bc") {
      if (value == "dirichlet") {
        config.bc = BoundaryCondition::Dirichlet;
      } else if (value == "neumann") {
        config.bc = BoundaryCondition::Neumann;
      } else {
        fail(origin, line, "bc must be dirichlet or neumann");
      }
    } else if (key == "n_modes") {
      config.n_modes = parse_int(origin, line, value);
    } else if (key == "quad_points") {
      config.quad_points = parse_int(origin, line, value);
    } else if (key == "t_f") {
      config.t_f = parse_double(origin, line, value);
    } else if (key == "grid_steps") {
      config.grid_steps = parse_int(origin, line, value);
    } else if (key == "diffusivity") {
      config.diffusivity = parse_double(origin, line, value);
    } else if (key == "velocity") {
      const auto nums = parse_numbers(origin, line, value);
      if (nums.size() != 2) fail(origin, line, "velocity needs two numbers");
      config.velocity = {nums[0], nums[1]};
    } else if (key == "control_weight") {
      config.control_weight = parse_double(origin, line, value);
    } else if (key == "guidance_cost_coeff") {
      config.guidance_cost_coeff = parse_double(origin, line, value);
    } else if (key == "actuator_starts") {
      config.actuator_starts = parse_points(origin, line, value);
    } else if (key == "kernel_sigma") {
      config.kernel_sigma = parse_double(origin, line, value);
    } else if (key == "guidance_box") {
      const auto nums = parse_numbers(origin, line, value);
      if (nums.size() != 2) {
        fail(origin, line, "guidance_box needs two numbers");
      }
      config.guidance_box_lower = nums[0];
      config.guidance_box_upper = nums[1];
    } else if (key == "p_max") {
      config.p_max = parse_double(origin, line, value);
    } else if (key == "a_max") {
      config.a_max = parse_double(origin, line, value);
    } else if (key == "disturbance") {
      config.disturbance = parse_bool(origin, line, value);
    } else if (key == "disturbance_amplitude") {
      config.disturbance_amplitude = parse_double(origin, line, value);
    } else if (key == "disturbance_sigma") {
      config.disturbance_sigma = parse_double(origin, line, value);
    } else if (key == "initial_condition") {
      config.initial_condition = value;
    } else if (key == "kernel_box_points") {
      config.kernel_box_points = parse_int(origin, line, value);
    } else if (key == "optimizer.max_iters") {
      config.optimizer.max_iters = parse_int(origin, line, value);
    } else if (key == "optimizer.gradient_tolerance") {
      config.optimizer.gradient_tolerance = parse_double(origin, line, value);
    } else if (key == "optimizer.initial_step") {
      config.optimizer.initial_step = parse_double(origin, line, value);
    } else if (key == "optimizer.shrink") {
      config.optimizer.shrink = parse_double(origin, line, value);
    } else if (key == "optimizer.sufficient_decrease") {
      config.optimizer.sufficient_decrease =
          parse_double(origin, line, value);
    } else if (key == "optimizer.max_backtracks") {
      config.optimizer.max_backtracks = parse_int(origin, line, value);
    } else if (key == "optimizer.grid_steps") {
      config.optimizer.grid_steps = parse_int(origin, line, value);
    } else {
      fail(origin, line, "unknown key '" + key + "'");
    }
  }
  config.validate();
  return config;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("load_config: cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path);
}

void save_config(const ScenarioConfig& config, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("save_config: cannot write '" + path + "'");
  }
  out << config.serialize();
}

}  // namespace mobipde
