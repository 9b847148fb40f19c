#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <utility>

#include "mobipde/quadrature.hpp"

namespace mobipde {

enum class BoundaryCondition { Dirichlet, Neumann };

const char* to_string(BoundaryCondition bc);

/// State coefficients with respect to a BasisSet, ordered by the basis flat
/// index.  Plain Eigen vector; the owning basis is passed alongside.
using CoefficientVector = Eigen::VectorXd;

/// Orthonormal Laplacian eigenfunction family on the unit square.
///
/// Dirichlet: phi_{i,j}(x,y) = 2 sin(pi i x) sin(pi j y), i,j in 1..N,
/// flattened as k = (i-1)N + (j-1) (zero-based version of the single index
/// k = (i-1)N + j).  Neumann: phi_{i,j}(x,y) = c_i c_j cos(pi i x) cos(pi j y),
/// i,j in 0..N-1, row-major flat index, with c_0 = 1 and c_i = sqrt(2)
/// otherwise so every mode has unit L2 norm.
///
/// Orthonormality is certified at construction: the Gram matrix under the
/// attached quadrature rule must equal the identity to 1e-10.
class BasisSet {
 public:
  /// quad_points_per_axis = 0 picks a default that passes the Gram
  /// certificate for any N (about 2.5 points per mode and axis).
  static BasisSet build(BoundaryCondition bc, int modes_per_axis,
                        int quad_points_per_axis = 0);

  BoundaryCondition bc() const { return bc_; }
  int modes_per_axis() const { return modes_; }
  int dim() const { return modes_ * modes_; }
  const QuadratureRule& quadrature() const { return quad_; }
  double gram_defect() const { return gram_defect_; }

  /// Axis wavenumber index of flat mode k: Dirichlet (i,j) in 1..N,
  /// Neumann (i,j) in 0..N-1.
  std::pair<int, int> axis_indices(int k) const;
  int flat_index(int i, int j) const;

  /// 1D factor f_i(x) so that phi_k(x,y) = f_i(x) f_j(y).
  double axis_value(int i, double x) const;
  double axis_derivative(int i, double x) const;
  /// All axis factors (and optionally derivatives) at one coordinate.
  void axis_values(double x, Eigen::VectorXd& values) const;
  void axis_values(double x, Eigen::VectorXd& values,
                   Eigen::VectorXd& derivatives) const;

  double evaluate(int k, double x, double y) const;
  Eigen::Vector2d gradient(int k, double x, double y) const;

  /// Eigenvalue of the Laplacian for mode k: -pi^2 (i^2 + j^2).
  double laplacian_eigenvalue(int k) const;

  /// All modes evaluated at (x, y).
  void evaluate_all(double x, double y, Eigen::VectorXd& values) const;

 private:
  BasisSet() = default;

  BoundaryCondition bc_ = BoundaryCondition::Dirichlet;
  int modes_ = 0;
  QuadratureRule quad_;
  double gram_defect_ = 0.0;
};

using SpatialField = std::function<double(double, double)>;

/// Galerkin matrix of A = a lap - v . grad: entry (k,l) = <phi_k, A phi_l>.
/// The diffusion block is analytic (Laplacian eigenvalues on the diagonal);
/// the advection block is evaluated with the basis quadrature rule.
Eigen::MatrixXd assemble_transport(const BasisSet& basis, double diffusivity,
                                   const Eigen::Vector2d& velocity);

/// Orthogonal projection coefficients c_k = <f, phi_k> by quadrature.
CoefficientVector project_field(const SpatialField& f, const BasisSet& basis);

/// Evaluates sum_k c_k phi_k at (x, y); throws std::domain_error outside the
/// closed unit square.
double evaluate_field(const CoefficientVector& coeffs, const BasisSet& basis,
                      double x, double y);

}  // namespace mobipde
