#include "mobipde/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace mobipde {

// Newton iteration on the Legendre polynomial P_n over [-1, 1], then affine
// map to [a, b].  Symmetric pairs are filled from one half.
void gauss_legendre(int points, double a, double b, Eigen::ArrayXd& nodes,
                    Eigen::ArrayXd& weights) {
  if (points < 1) {
    throw std::invalid_argument("gauss_legendre: points must be >= 1");
  }
  const int n = points;
  nodes.resize(n);
  weights.resize(n);

  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Three-term recurrence for P_n(x) and P_{n-1}(x).
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // x from the cosine guess decreases with i; store ascending.
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }

  const double scale = 0.5 * (b - a);
  const double shift = 0.5 * (b + a);
  nodes = shift + scale * nodes;
  weights *= scale;
}

QuadratureRule QuadratureRule::tensor_gauss(int points_per_axis) {
  if (points_per_axis < 1) {
    throw std::invalid_argument("tensor_gauss: points_per_axis must be >= 1");
  }
  QuadratureRule rule;
  rule.points_per_axis = points_per_axis;
  gauss_legendre(points_per_axis, 0.0, 1.0, rule.axis_nodes, rule.axis_weights);

  const int n = points_per_axis;
  rule.nodes.resize(n * n, 2);
  rule.weights.resize(n * n);
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      const int q = iy * n + ix;
      rule.nodes(q, 0) = rule.axis_nodes[ix];
      rule.nodes(q, 1) = rule.axis_nodes[iy];
      rule.weights[q] = rule.axis_weights[ix] * rule.axis_weights[iy];
    }
  }
  return rule;
}

}  // namespace mobipde
