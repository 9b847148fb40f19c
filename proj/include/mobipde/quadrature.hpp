#pragma once

#include <Eigen/Dense>
#include <vector>

namespace mobipde {

/// Gauss-Legendre nodes and weights for integrating over [a, b].
/// Nodes are strictly increasing; the weights sum to b - a.
void gauss_legendre(int points, double a, double b, Eigen::ArrayXd& nodes,
                    Eigen::ArrayXd& weights);

/// Tensor-product Gauss-Legendre rule on the unit square [0,1]^2.
/// Exact for bivariate polynomials up to degree 2*points_per_axis - 1 per
/// axis; the weights sum to the domain area (1).
struct QuadratureRule {
  int points_per_axis = 0;
  Eigen::ArrayXd axis_nodes;    // shared by both axes
  Eigen::ArrayXd axis_weights;
  Eigen::MatrixX2d nodes;       // row q = (x_q, y_q), x fastest varying in y
  Eigen::ArrayXd weights;

  static QuadratureRule tensor_gauss(int points_per_axis);

  int size() const { return static_cast<int>(weights.size()); }
};

}  // namespace mobipde
