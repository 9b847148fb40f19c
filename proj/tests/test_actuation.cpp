#include <doctest.h>

#include <cmath>
#include <random>

#include "mobipde/actuation.hpp"

using namespace mobipde;

TEST_CASE("kernel value") {
  const GaussianKernel kernel(0.05, {0.4, 0.6});
  SUBCASE("peak at the center is 1/(2 pi sigma^2)") {
    CHECK(kernel.value(0.4, 0.6) ==
          doctest::Approx(1.0 / (2.0 * M_PI * 0.0025)).epsilon(1e-14));
    CHECK(kernel.value(0.4, 0.6) == doctest::Approx(63.6619772).epsilon(1e-8));
  }
  SUBCASE("zero outside the support box") {
    CHECK(kernel.value(0.4 + 0.051, 0.6) == 0.0);
    CHECK(kernel.value(0.4, 0.6 - 0.07) == 0.0);
    CHECK(kernel.value(0.0, 0.0) == 0.0);
  }
  SUBCASE("nonpositive width is rejected") {
    CHECK_THROWS_AS(GaussianKernel(0.0, {0.5, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(GaussianKernel(-0.05, {0.5, 0.5}), std::invalid_argument);
  }
}

TEST_CASE("truncation loses mass: the interior integral is erf(1)^2 / 2") {
  // Separable oracle: int over the box of exp(-(s-c)^2/sigma^2) ds
  // = sigma sqrt(pi) erf(1) per axis, so the normalized 2D mass is
  // (sigma^2 pi erf(1)^2) / (2 pi sigma^2) = erf(1)^2 / 2.
  const double expected = 0.5 * std::erf(1.0) * std::erf(1.0);

  const GaussianKernel kernel(0.05, {0.5, 0.5});
  double mass = 0.0;
  const int n = 400;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = 0.45 + 0.1 * (i + 0.5) / n;
      const double y = 0.45 + 0.1 * (j + 0.5) / n;
      mass += kernel.value(x, y) * 0.1 * 0.1 / (n * n);
    }
  }
  CHECK(mass == doctest::Approx(expected).epsilon(1e-5));
  CHECK(expected == doctest::Approx(0.3550723).epsilon(1e-6));

  // The Neumann constant mode recovers the mass as a projection
  // coefficient, which also certifies the dedicated box quadrature.
  const auto basis = BasisSet::build(BoundaryCondition::Neumann, 1);
  const auto coeffs = project_kernel(kernel, basis);
  CHECK(coeffs[0] == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("projection locality: each column depends on its own actuator") {
  const auto basis = BasisSet::build(BoundaryCondition::Dirichlet, 6);
  const std::vector<double> sigmas{0.05, 0.05, 0.05};
  std::vector<Eigen::Vector2d> a{{0.2, 0.3}, {0.6, 0.6}, {0.8, 0.2}};
  std::vector<Eigen::Vector2d> b = a;
  b[1] += Eigen::Vector2d{0.01, -0.02};
  const auto ba = project_input(a, sigmas, basis);
  const auto bb = project_input(b, sigmas, basis);
  CHECK((ba.col(0) - bb.col(0)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((ba.col(2) - bb.col(2)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((ba.col(1) - bb.col(1)).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("symmetric position zeroes antisymmetric modes") {
  const auto basis = BasisSet::build(BoundaryCondition::Dirichlet, 4);
  const auto col =
      project_kernel(GaussianKernel(0.05, {0.5, 0.5}), basis);
  // phi_(1,2) is antisymmetric about y = 0.5 while the kernel is symmetric.
  CHECK(std::abs(col[basis.flat_index(1, 2)]) < 1e-14);
  CHECK(std::abs(col[basis.flat_index(2, 1)]) < 1e-14);
  CHECK(std::abs(col[basis.flat_index(1, 1)]) > 1e-3);
}

TEST_CASE("support wholly outside the domain gives a zero column") {
  const auto basis = BasisSet::build(BoundaryCondition::Dirichlet, 4);
  const GaussianKernel kernel(0.05, {1.2, 0.5});
  CHECK(project_kernel(kernel, basis).cwiseAbs().maxCoeff() == 0.0);
  const auto [ddx, ddy] = kernel_location_gradient(kernel, basis);
  CHECK(ddx.cwiseAbs().maxCoeff() == 0.0);
  CHECK(ddy.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("continuity in location") {
  const auto basis = BasisSet::build(BoundaryCondition::Dirichlet, 6);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> interior(0.15, 0.85);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);

  for (int pair = 0; pair < 20; ++pair) {
    const Eigen::Vector2d x0{interior(rng), interior(rng)};
    const double phi = angle(rng);
    const Eigen::Vector2d dir{std::cos(phi), std::sin(phi)};
    double previous = 1e30;
    for (double delta : {1e-2, 1e-3, 1e-4}) {
      const auto b0 = project_kernel(GaussianKernel(0.05, x0), basis);
      const auto b1 =
          project_kernel(GaussianKernel(0.05, x0 + delta * dir), basis);
      const double diff = (b1 - b0).norm();
      CHECK(diff < previous);
      previous = diff;
    }
  }
}

TEST_CASE("difference quotient stays Lipschitz over small offsets") {
  const auto basis = BasisSet::build(BoundaryCondition::Dirichlet, 6);
  const Eigen::Vector2d x0{0.37, 0.52};
  const Eigen::Vector2d dir = Eigen::Vector2d{1.0, -0.4}.normalized();
  const auto b0 = project_kernel(GaussianKernel(0.05, x0), basis);

  // Fit L at the largest offset, then check the bound down to 1e-4.
  const auto diff_at = [&](double delta) {
    return (project_kernel(GaussianKernel(0.05, x0 + delta * dir), basis) - b0)
        .norm();
  };
  const double fitted = diff_at(1e-2) / 1e-2;
  for (double delta : {1e-2, 3e-3, 1e-3, 3e-4, 1e-4}) {
    CHECK(diff_at(delta) <= 1.1 * fitted * delta);
  }
}

TEST_CASE("location gradient matches central differences") {
  const auto basis = BasisSet::build(BoundaryCondition::Dirichlet, 6);
  const Eigen::Vector2d pos{0.3, 0.4};
  const double h = 1e-5;
  const auto [ddx, ddy] =
      kernel_location_gradient(GaussianKernel(0.05, pos), basis);

  const auto shifted = [&](const Eigen::Vector2d& p) {
    return project_kernel(GaussianKernel(0.05, p), basis);
  };
  const CoefficientVector fdx =
      (shifted(pos + Eigen::Vector2d{h, 0}) -
       shifted(pos - Eigen::Vector2d{h, 0})) /
      (2.0 * h);
  const CoefficientVector fdy =
      (shifted(pos + Eigen::Vector2d{0, h}) -
       shifted(pos - Eigen::Vector2d{0, h})) /
      (2.0 * h);

  CHECK((ddx - fdx).norm() / fdx.norm() < 1e-3);
  CHECK((ddy - fdy).norm() / fdy.norm() < 1e-3);

  // Per-mode sign agreement wherever the finite difference is resolvable.
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> pick(0, basis.dim() - 1);
  int checked = 0;
  while (checked < 10) {
    const int k = pick(rng);
    if (std::abs(fdx[k]) < 1e-6) continue;
    CHECK(ddx[k] * fdx[k] > 0.0);
    ++checked;
  }
}

TEST_CASE("disturbance sweep stays inside the domain") {
  const auto model = DisturbanceModel::circular_sweep();
  for (int i = 0; i <= 100; ++i) {
    const auto x = model.trajectory(i / 100.0);
    CHECK(x.x() >= 0.0);
    CHECK(x.x() <= 1.0);
    CHECK(x.y() >= 0.0);
    CHECK(x.y() <= 1.0);
  }
}

TEST_CASE("sampled input trajectories carry the disturbance when asked") {
  const auto basis = BasisSet::build(BoundaryCondition::Dirichlet, 3);
  const auto grid = TimeGrid::uniform(1.0, 4);
  const std::vector<double> sigmas{0.05};
  const auto positions = [](int, double t) {
    return std::vector<Eigen::Vector2d>{{0.2 + 0.1 * t, 0.5}};
  };
  const auto plain = sample_input(positions, sigmas, basis, grid);
  CHECK_FALSE(plain.has_disturbance());
  CHECK(plain.input.size() == 9);
  const auto disturbed = sample_input(positions, sigmas, basis, grid,
                                      DisturbanceModel::circular_sweep());
  CHECK(disturbed.has_disturbance());
  CHECK(disturbed.disturbance.size() == 9);
  CHECK(disturbed.disturbance[0].cwiseAbs().maxCoeff() > 0.0);
}
