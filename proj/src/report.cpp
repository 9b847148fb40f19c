#include "mobipde/report.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace mobipde {
namespace report {

namespace {

std::ofstream open(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("report: cannot write '" + path + "'");
  }
  out << std::setprecision(17);
  return out;
}

}  // namespace

std::string hash_line(const ScenarioConfig& config) {
  std::ostringstream os;
  os << "# config_hash=" << std::hex << config.hash();
  return os.str();
}

void write_strategy_table(const StrategyTable& table,
                          const ScenarioConfig& config,
                          const std::string& path) {
  auto out = open(path);
  out << hash_line(config) << "\n";
  out << "strategy,pde_cost,mobility_cost,total,pde_percent,"
         "mobility_percent,total_percent\n";
  const double reference = table.rows.back().cost.total;
  for (const auto& row : table.rows) {
    out << to_string(row.strategy) << "," << row.cost.pde_cost << ","
        << row.cost.mobility_cost << "," << row.cost.total << ","
        << 100.0 * row.cost.pde_cost / reference << ","
        << 100.0 * row.cost.mobility_cost / reference << ","
        << row.cost.normalized_percent.value_or(0.0) << "\n";
  }
}

void write_norm_histories(const StrategyTable& table,
                          const ScenarioConfig& config,
                          const std::string& path) {
  auto out = open(path);
  out << hash_line(config) << "\n";
  out << "t";
  for (const auto& row : table.rows) out << "," << to_string(row.strategy);
  out << "\n";
  const TimeGrid& grid = table.rows.front().sim.grid;
  for (int k = 0; k < grid.node_count(); ++k) {
    out << grid.node(k);
    for (const auto& row : table.rows) out << "," << row.sim.norm_history[k];
    out << "\n";
  }
}

void write_controls(const SimResult& sim, const ScenarioConfig& config,
                    const std::string& path) {
  auto out = open(path);
  out << hash_line(config) << "\n";
  out << "t";
  for (int i = 0; i < sim.controls.rows(); ++i) out << ",u_" << (i + 1);
  out << "\n";
  for (int k = 0; k < sim.grid.node_count(); ++k) {
    out << sim.grid.node(k);
    for (int i = 0; i < sim.controls.rows(); ++i) {
      out << "," << sim.controls(i, k);
    }
    out << "\n";
  }
}

void write_trajectory(const TrajectoryProfile& trajectory,
                      const FleetDynamics& fleet,
                      const ScenarioConfig& config, const std::string& path) {
  auto out = open(path);
  out << hash_line(config) << "\n";
  out << "t";
  for (int i = 0; i < fleet.actuator_count(); ++i) {
    out << ",x_" << (i + 1) << ",y_" << (i + 1);
  }
  out << "\n";
  for (int k = 0; k < trajectory.grid.node_count(); ++k) {
    out << trajectory.grid.node(k);
    const auto positions = fleet.positions(trajectory.states.col(k));
    for (const auto& p : positions) out << "," << p.x() << "," << p.y();
    out << "\n";
  }
}

void write_guidance(const GuidanceProfile& guidance,
                    const ScenarioConfig& config, const std::string& path) {
  auto out = open(path);
  out << hash_line(config) << "\n";
  out << "t";
  for (int i = 0; i < guidance.values.rows(); ++i) out << ",p_" << (i + 1);
  out << "\n";
  for (int k = 0; k < guidance.grid.node_count(); ++k) {
    out << guidance.grid.node(k);
    for (int i = 0; i < guidance.values.rows(); ++i) {
      out << "," << guidance.values(i, k);
    }
    out << "\n";
  }
}

void write_snapshot(const CoefficientVector& coeffs, const BasisSet& basis,
                    const ScenarioConfig& config, const std::string& path,
                    int raster) {
  auto out = open(path);
  out << hash_line(config) << "\n";
  out << "x,y,z\n";
  for (int iy = 0; iy < raster; ++iy) {
    const double y = static_cast<double>(iy) / (raster - 1);
    for (int ix = 0; ix < raster; ++ix) {
      const double x = static_cast<double>(ix) / (raster - 1);
      out << x << "," << y << "," << evaluate_field(coeffs, basis, x, y)
          << "\n";
    }
  }
}

void write_convergence(const ConvergenceReport& report,
                       const ScenarioConfig& config, const std::string& path) {
  auto out = open(path);
  out << hash_line(config) << "\n";
  out << "n_modes,dimension,pde_cost,mobility_cost,total,normalized_percent,"
         "iterations,stalled\n";
  for (const auto& entry : report.entries) {
    out << entry.n_modes << "," << entry.n_modes * entry.n_modes << ","
        << entry.pde_cost << "," << entry.mobility_cost << "," << entry.total
        << "," << entry.normalized_percent << "," << entry.iterations << ","
        << (entry.stalled ? 1 : 0) << "\n";
  }
}

void write_metadata(const ScenarioConfig& config,
                    const std::vector<std::string>& lines,
                    const std::string& path) {
  auto out = open(path);
  out << hash_line(config) << "\n";
  for (const auto& line : lines) out << line << "\n";
  out << "--- config ---\n" << config.serialize();
}

}  // namespace report
}  // namespace mobipde
