#include "mobipde/basis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mobipde {

namespace {
constexpr double kGramTolerance = 1e-10;
constexpr double kSqrt2 = 1.4142135623730951;
}  // namespace

const char* to_string(BoundaryCondition bc) {
  return bc == BoundaryCondition::Dirichlet ? "dirichlet" : "neumann";
}

BasisSet BasisSet::build(BoundaryCondition bc, int modes_per_axis,
                         int quad_points_per_axis) {
  if (modes_per_axis < 1) {
    throw std::invalid_argument("BasisSet: modes_per_axis must be >= 1");
  }
  if (quad_points_per_axis == 0) {
    // Gram entries contain frequencies up to 2N half-waves per axis; one
    // Gauss point per half-wave plus a tail margin keeps the certificate
    // below 1e-10 for every N (measured: the minimum is about 2N + 9).
    quad_points_per_axis = 2 * modes_per_axis + 12;
  }

  BasisSet basis;
  basis.bc_ = bc;
  basis.modes_ = modes_per_axis;
  basis.quad_ = QuadratureRule::tensor_gauss(quad_points_per_axis);

  // Gram certificate: Phi^T diag(w) Phi == I.
  const int n2 = basis.dim();
  const int q = basis.quad_.size();
  Eigen::MatrixXd phi(q, n2);
  Eigen::VectorXd values(n2);
  for (int iq = 0; iq < q; ++iq) {
    basis.evaluate_all(basis.quad_.nodes(iq, 0), basis.quad_.nodes(iq, 1),
                       values);
    phi.row(iq) = values;
  }
  Eigen::MatrixXd gram =
      phi.transpose() * basis.quad_.weights.matrix().asDiagonal() * phi;
  gram.diagonal().array() -= 1.0;
  basis.gram_defect_ = gram.cwiseAbs().maxCoeff();
  if (basis.gram_defect_ > kGramTolerance) {
    throw std::invalid_argument(
        "BasisSet: quadrature with " + std::to_string(quad_points_per_axis) +
        " points/axis fails the orthonormality certificate (defect " +
        std::to_string(basis.gram_defect_) + ")");
  }
  return basis;
}

std::pair<int, int> BasisSet::axis_indices(int k) const {
  const int i = k / modes_;
  const int j = k % modes_;
  if (bc_ == BoundaryCondition::Dirichlet) return {i + 1, j + 1};
  return {i, j};
}

int BasisSet::flat_index(int i, int j) const {
  if (bc_ == BoundaryCondition::Dirichlet) return (i - 1) * modes_ + (j - 1);
  return i * modes_ + j;
}

double BasisSet::axis_value(int i, double x) const {
  if (bc_ == BoundaryCondition::Dirichlet) {
    return kSqrt2 * std::sin(M_PI * i * x);
  }
  const double c = (i == 0) ? 1.0 : kSqrt2;
  return c * std::cos(M_PI * i * x);
}

double BasisSet::axis_derivative(int i, double x) const {
  if (bc_ == BoundaryCondition::Dirichlet) {
    return kSqrt2 * M_PI * i * std::cos(M_PI * i * x);
  }
  const double c = (i == 0) ? 1.0 : kSqrt2;
  return -c * M_PI * i * std::sin(M_PI * i * x);
}

void BasisSet::axis_values(double x, Eigen::VectorXd& values) const {
  values.resize(modes_);
  if (bc_ == BoundaryCondition::Dirichlet) {
    for (int i = 1; i <= modes_; ++i) {
      values[i - 1] = kSqrt2 * std::sin(M_PI * i * x);
    }
  } else {
    values[0] = 1.0;
    for (int i = 1; i < modes_; ++i) {
      values[i] = kSqrt2 * std::cos(M_PI * i * x);
    }
  }
}

void BasisSet::axis_values(double x, Eigen::VectorXd& values,
                           Eigen::VectorXd& derivatives) const {
  values.resize(modes_);
  derivatives.resize(modes_);
  if (bc_ == BoundaryCondition::Dirichlet) {
    for (int i = 1; i <= modes_; ++i) {
      const double s = std::sin(M_PI * i * x);
      const double c = std::cos(M_PI * i * x);
      values[i - 1] = kSqrt2 * s;
      derivatives[i - 1] = kSqrt2 * M_PI * i * c;
    }
  } else {
    values[0] = 1.0;
    derivatives[0] = 0.0;
    for (int i = 1; i < modes_; ++i) {
      const double s = std::sin(M_PI * i * x);
      const double c = std::cos(M_PI * i * x);
      values[i] = kSqrt2 * c;
      derivatives[i] = -kSqrt2 * M_PI * i * s;
    }
  }
}

double BasisSet::evaluate(int k, double x, double y) const {
  const auto [i, j] = axis_indices(k);
  return axis_value(i, x) * axis_value(j, y);
}

Eigen::Vector2d BasisSet::gradient(int k, double x, double y) const {
  const auto [i, j] = axis_indices(k);
  return {axis_derivative(i, x) * axis_value(j, y),
          axis_value(i, x) * axis_derivative(j, y)};
}

double BasisSet::laplacian_eigenvalue(int k) const {
  const auto [i, j] = axis_indices(k);
  return -M_PI * M_PI * static_cast<double>(i * i + j * j);
}

void BasisSet::evaluate_all(double x, double y, Eigen::VectorXd& values) const {
  Eigen::VectorXd fx(modes_), fy(modes_);
  axis_values(x, fx);
  axis_values(y, fy);
  values.resize(dim());
  Eigen::Map<Eigen::MatrixXd>(values.data(), modes_, modes_).noalias() =
      fy * fx.transpose();
  // The map above lays out value(j + i*N) = fx(i) * fy(j), matching
  // flat_index: column index i (x factor) strides by N.
}

Eigen::MatrixXd assemble_transport(const BasisSet& basis, double diffusivity,
                                   const Eigen::Vector2d& velocity) {
  if (diffusivity <= 0.0) {
    throw std::invalid_argument("assemble_transport: diffusivity must be > 0");
  }
  const int n2 = basis.dim();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n2, n2);
  for (int k = 0; k < n2; ++k) {
    a(k, k) = diffusivity * basis.laplacian_eigenvalue(k);
  }
  if (velocity.squaredNorm() == 0.0) return a;

  // Advection entries -<phi_k, v . grad phi_l> by quadrature:
  // A_adv = -Phi^T diag(w) (vx dPhi/dx + vy dPhi/dy).
  const auto& quad = basis.quadrature();
  const int q = quad.size();
  Eigen::MatrixXd phi(q, n2), dphi(q, n2);
  Eigen::VectorXd fx, fy, dfx, dfy;
  const int n = basis.modes_per_axis();
  for (int iq = 0; iq < q; ++iq) {
    basis.axis_values(quad.nodes(iq, 0), fx, dfx);
    basis.axis_values(quad.nodes(iq, 1), fy, dfy);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const int k = i * n + j;
        phi(iq, k) = fx[i] * fy[j];
        dphi(iq, k) =
            velocity.x() * dfx[i] * fy[j] + velocity.y() * fx[i] * dfy[j];
      }
    }
  }
  a.noalias() -=
      phi.transpose() * quad.weights.matrix().asDiagonal() * dphi;
  return a;
}

CoefficientVector project_field(const SpatialField& f, const BasisSet& basis) {
  const auto& quad = basis.quadrature();
  const int q = quad.size();
  CoefficientVector coeffs = CoefficientVector::Zero(basis.dim());
  Eigen::VectorXd values;
  for (int iq = 0; iq < q; ++iq) {
    const double x = quad.nodes(iq, 0);
    const double y = quad.nodes(iq, 1);
    const double fw = quad.weights[iq] * f(x, y);
    if (fw == 0.0) continue;
    basis.evaluate_all(x, y, values);
    coeffs.noalias() += fw * values;
  }
  return coeffs;
}

double evaluate_field(const CoefficientVector& coeffs, const BasisSet& basis,
                      double x, double y) {
  if (coeffs.size() != basis.dim()) {
    throw std::invalid_argument("evaluate_field: coefficient size mismatch");
  }
  constexpr double eps = 1e-12;
  if (x < -eps || x > 1.0 + eps || y < -eps || y > 1.0 + eps) {
    throw std::domain_error("evaluate_field: point outside the unit square");
  }
  Eigen::VectorXd fx, fy;
  basis.axis_values(x, fx);
  basis.axis_values(y, fy);
  const int n = basis.modes_per_axis();
  return fy.transpose() *
         Eigen::Map<const Eigen::MatrixXd>(coeffs.data(), n, n) * fx;
}

}  // namespace mobipde
