#include "mobipde/actuation.hpp"

#include <cmath>
#include <stdexcept>

#include "mobipde/quadrature.hpp"

namespace mobipde {

namespace {

// 1D factor integrals of the kernel against every axis mode:
//   out[i] = int_{lo}^{hi} exp(-(s-c)^2/sigma^2) f_i(s) ds
// over the support box clipped to [0, 1], and optionally the center
// derivative d out / dc.  The derivative has two parts: the smooth Gaussian
// derivative under the integral, and the moving edges of the truncated
// support, which carry the edge value exp(-1) wherever the box is not
// clipped by the domain.  The edge term is the same order as the smooth
// term, so dropping it would bend the descent direction by tens of percent.
// Returns false when the clipped interval is empty.
bool axis_factor_integrals(const BasisSet& basis, double center, double sigma,
                           int box_points, Eigen::VectorXd& out,
                           Eigen::VectorXd* dout) {
  const double lo = std::max(0.0, center - sigma);
  const double hi = std::min(1.0, center + sigma);
  out.setZero(basis.modes_per_axis());
  if (dout != nullptr) dout->setZero(basis.modes_per_axis());
  if (lo >= hi) return false;

  Eigen::ArrayXd nodes, weights;
  gauss_legendre(box_points, lo, hi, nodes, weights);
  Eigen::VectorXd f(basis.modes_per_axis());
  const double inv_s2 = 1.0 / (sigma * sigma);
  for (int q = 0; q < box_points; ++q) {
    const double d = nodes[q] - center;
    const double g = weights[q] * std::exp(-d * d * inv_s2);
    basis.axis_values(nodes[q], f);
    out.noalias() += g * f;
    if (dout != nullptr) dout->noalias() += (2.0 * d * inv_s2) * g * f;
  }
  if (dout != nullptr) {
    const double edge = std::exp(-1.0);
    if (center + sigma < 1.0) {
      basis.axis_values(center + sigma, f);
      dout->noalias() += edge * f;
    }
    if (center - sigma > 0.0) {
      basis.axis_values(center - sigma, f);
      dout->noalias() -= edge * f;
    }
  }
  return true;
}

// coeffs[flat(i,j)] = scale * gx[i] * gy[j]; the flat layout is column i
// (x factor) striding by N, see BasisSet::evaluate_all.
void separable_fill(const BasisSet& basis, double scale,
                    const Eigen::VectorXd& gx, const Eigen::VectorXd& gy,
                    CoefficientVector& coeffs) {
  const int n = basis.modes_per_axis();
  coeffs.resize(basis.dim());
  Eigen::Map<Eigen::MatrixXd>(coeffs.data(), n, n).noalias() =
      scale * gy * gx.transpose();
}

}  // namespace

GaussianKernel::GaussianKernel(double sigma_in,
                               const Eigen::Vector2d& center_in)
    : sigma(sigma_in), center(center_in) {
  if (sigma <= 0.0) {
    throw std::invalid_argument("GaussianKernel: sigma must be > 0");
  }
}

double GaussianKernel::value(double x, double y) const {
  const double dx = x - center.x();
  const double dy = y - center.y();
  if (std::abs(dx) > sigma || std::abs(dy) > sigma) return 0.0;
  const double inv_s2 = 1.0 / (sigma * sigma);
  return std::exp(-(dx * dx + dy * dy) * inv_s2) / (2.0 * M_PI * sigma * sigma);
}

Eigen::Vector2d GaussianKernel::center_gradient(double x, double y) const {
  const double v = value(x, y);
  const double inv_s2 = 1.0 / (sigma * sigma);
  return {2.0 * (x - center.x()) * inv_s2 * v,
          2.0 * (y - center.y()) * inv_s2 * v};
}

CoefficientVector project_kernel(const GaussianKernel& kernel,
                                 const BasisSet& basis, int box_points) {
  Eigen::VectorXd gx, gy;
  CoefficientVector coeffs = CoefficientVector::Zero(basis.dim());
  const bool okx = axis_factor_integrals(basis, kernel.center.x(),
                                         kernel.sigma, box_points, gx, nullptr);
  const bool oky = axis_factor_integrals(basis, kernel.center.y(),
                                         kernel.sigma, box_points, gy, nullptr);
  if (!okx || !oky) return coeffs;
  const double scale = 1.0 / (2.0 * M_PI * kernel.sigma * kernel.sigma);
  separable_fill(basis, scale, gx, gy, coeffs);
  return coeffs;
}

std::pair<CoefficientVector, CoefficientVector> kernel_location_gradient(
    const GaussianKernel& kernel, const BasisSet& basis, int box_points) {
  Eigen::VectorXd gx, gy, dgx, dgy;
  CoefficientVector ddx = CoefficientVector::Zero(basis.dim());
  CoefficientVector ddy = CoefficientVector::Zero(basis.dim());
  const bool okx = axis_factor_integrals(basis, kernel.center.x(),
                                         kernel.sigma, box_points, gx, &dgx);
  const bool oky = axis_factor_integrals(basis, kernel.center.y(),
                                         kernel.sigma, box_points, gy, &dgy);
  if (!okx || !oky) return {ddx, ddy};
  const double scale = 1.0 / (2.0 * M_PI * kernel.sigma * kernel.sigma);
  separable_fill(basis, scale, dgx, gy, ddx);
  separable_fill(basis, scale, gx, dgy, ddy);
  return {ddx, ddy};
}

Eigen::MatrixXd project_input(const std::vector<Eigen::Vector2d>& positions,
                              const std::vector<double>& sigmas,
                              const BasisSet& basis, int box_points) {
  if (positions.size() != sigmas.size()) {
    throw std::invalid_argument("project_input: positions/sigmas mismatch");
  }
  Eigen::MatrixXd b(basis.dim(), static_cast<int>(positions.size()));
  for (std::size_t i = 0; i < positions.size(); ++i) {
    b.col(static_cast<int>(i)) =
        project_kernel(GaussianKernel(sigmas[i], positions[i]), basis,
                       box_points);
  }
  return b;
}

DisturbanceModel DisturbanceModel::circular_sweep(double amplitude,
                                                  double sigma) {
  DisturbanceModel model;
  model.amplitude = amplitude;
  model.sigma = sigma;
  model.trajectory = [](double t) {
    return Eigen::Vector2d{0.5 + 0.3 * std::sin(2.0 * M_PI * t),
                           0.5 + 0.3 * std::cos(2.0 * M_PI * t)};
  };
  return model;
}

InputTrajectory sample_input(
    const std::function<std::vector<Eigen::Vector2d>(int, double)>&
        positions_at,
    const std::vector<double>& sigmas, const BasisSet& basis,
    const TimeGrid& grid, const std::optional<DisturbanceModel>& disturbance,
    int box_points) {
  InputTrajectory traj;
  traj.grid = grid;
  traj.input.resize(grid.half_count());
  if (disturbance) traj.disturbance.resize(grid.half_count());
  for (int j = 0; j < grid.half_count(); ++j) {
    const double t = grid.half_time(j);
    traj.input[j] =
        project_input(positions_at(j, t), sigmas, basis, box_points);
    if (disturbance) {
      traj.disturbance[j] =
          disturbance->amplitude *
          project_kernel(
              GaussianKernel(disturbance->sigma, disturbance->trajectory(t)),
              basis, box_points);
    }
  }
  return traj;
}

}  // namespace mobipde
