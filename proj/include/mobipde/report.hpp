#pragma once

#include <string>
#include <vector>

#include "mobipde/bench.hpp"

namespace mobipde {

/// Writers for the benchmark output files.  Every file starts with a
/// '# config_hash=...' comment so results can be traced to the exact
/// configuration; numeric cells are printed with 17 significant digits.
namespace report {

std::string hash_line(const ScenarioConfig& config);

void write_strategy_table(const StrategyTable& table,
                          const ScenarioConfig& config,
                          const std::string& path);

/// Columns: t, |Z| per strategy (table order).
void write_norm_histories(const StrategyTable& table,
                          const ScenarioConfig& config,
                          const std::string& path);

/// Columns: t, u_1..u_m.
void write_controls(const SimResult& sim, const ScenarioConfig& config,
                    const std::string& path);

/// Columns: t, x_1, y_1, ..., x_m, y_m.
void write_trajectory(const TrajectoryProfile& trajectory,
                      const FleetDynamics& fleet,
                      const ScenarioConfig& config, const std::string& path);

/// Columns: t, p_1..p_m.
void write_guidance(const GuidanceProfile& guidance,
                    const ScenarioConfig& config, const std::string& path);

/// Field raster (default 101 x 101) at one instant: x, y, z rows, suitable
/// for gnuplot heatmaps.
void write_snapshot(const CoefficientVector& coeffs, const BasisSet& basis,
                    const ScenarioConfig& config, const std::string& path,
                    int raster = 101);

void write_convergence(const ConvergenceReport& report,
                       const ScenarioConfig& config, const std::string& path);

/// Free-form run metadata (config echo, iteration counts, wall time);
/// the only file allowed to contain non-reproducible content.
void write_metadata(const ScenarioConfig& config,
                    const std::vector<std::string>& lines,
                    const std::string& path);

}  // namespace report
}  // namespace mobipde
