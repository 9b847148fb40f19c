#include <doctest.h>

#include <cmath>

#include "mobipde/quadrature.hpp"

using namespace mobipde;

TEST_CASE("weights sum to the domain area") {
  for (int n : {1, 2, 5, 12, 30, 52}) {
    const auto rule = QuadratureRule::tensor_gauss(n);
    CHECK(std::abs(rule.weights.sum() - 1.0) < 1e-12);
    CHECK(rule.size() == n * n);
  }
}

TEST_CASE("nodes lie inside the unit square") {
  const auto rule = QuadratureRule::tensor_gauss(9);
  for (int q = 0; q < rule.size(); ++q) {
    CHECK(rule.nodes(q, 0) > 0.0);
    CHECK(rule.nodes(q, 0) < 1.0);
    CHECK(rule.nodes(q, 1) > 0.0);
    CHECK(rule.nodes(q, 1) < 1.0);
  }
}

TEST_CASE("exact for polynomials up to degree 2n-1 per axis") {
  for (int n : {2, 4, 7}) {
    const auto rule = QuadratureRule::tensor_gauss(n);
    for (int px = 0; px <= 2 * n - 1; px += (n > 2 ? 3 : 1)) {
      for (int py : {0, 2 * n - 1}) {
        double integral = 0.0;
        for (int q = 0; q < rule.size(); ++q) {
          integral += rule.weights[q] * std::pow(rule.nodes(q, 0), px) *
                      std::pow(rule.nodes(q, 1), py);
        }
        const double exact = 1.0 / ((px + 1.0) * (py + 1.0));
        CHECK(std::abs(integral - exact) < 1e-13);
      }
    }
  }
}

TEST_CASE("interval rule matches the affine map") {
  Eigen::ArrayXd nodes, weights;
  gauss_legendre(6, 0.25, 0.4, nodes, weights);
  CHECK(std::abs(weights.sum() - 0.15) < 1e-14);
  double integral = 0.0;
  for (int q = 0; q < 6; ++q) {
    integral += weights[q] * nodes[q] * nodes[q];
  }
  CHECK(std::abs(integral - (std::pow(0.4, 3) - std::pow(0.25, 3)) / 3.0) <
        1e-15);
}

TEST_CASE("rejects nonpositive point counts") {
  CHECK_THROWS_AS(QuadratureRule::tensor_gauss(0), std::invalid_argument);
  Eigen::ArrayXd n, w;
  CHECK_THROWS_AS(gauss_legendre(0, 0.0, 1.0, n, w), std::invalid_argument);
}
