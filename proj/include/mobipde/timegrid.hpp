#pragma once

#include <cassert>
#include <stdexcept>

namespace mobipde {

/// Uniform time grid on [0, t_f] with `steps` intervals.  Integrators in this
/// library are classical RK4 with stage values taken on the half grid
/// (2*steps + 1 samples spaced dt/2), so time-varying data is usually sampled
/// there once and reused.
struct TimeGrid {
  double t_f = 1.0;
  int steps = 1000;

  static TimeGrid uniform(double t_f, int steps) {
    if (t_f <= 0.0 || steps < 1) {
      throw std::invalid_argument("TimeGrid: t_f must be > 0 and steps >= 1");
    }
    return TimeGrid{t_f, steps};
  }

  double dt() const { return t_f / steps; }
  int node_count() const { return steps + 1; }
  int half_count() const { return 2 * steps + 1; }

  double node(int k) const {
    assert(k >= 0 && k <= steps);
    return t_f * static_cast<double>(k) / steps;
  }
  double half_time(int j) const {
    assert(j >= 0 && j <= 2 * steps);
    return t_f * static_cast<double>(j) / (2 * steps);
  }

  bool operator==(const TimeGrid&) const = default;
};

}  // namespace mobipde
