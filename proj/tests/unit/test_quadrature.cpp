#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "community_forge/quadrature.hpp"

using namespace community_forge;

TEST_CASE("Gauss-Legendre weights sum to two and nodes are symmetric") {
  for (int n : {1, 2, 5, 16, 64}) {
    const auto& r = gauss_legendre(n);
    REQUIRE(r.nodes.size() == static_cast<std::size_t>(n));
    double sum = 0.0;
    for (double w : r.weights) sum += w;
    CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
    for (int i = 0; i < n; ++i) CHECK(r.nodes[i] == doctest::Approx(-r.nodes[n - 1 - i]).epsilon(1e-14));
  }
}

TEST_CASE("n-point rule is exact for degree 2n - 1") {
  for (int n : {2, 4, 8}) {
    const int deg = 2 * n - 1;
    const double got = gauss_legendre_integrate([&](double x) { return std::pow(x, deg - 1); }, 0.0, 1.0, n);
    CHECK(got == doctest::Approx(1.0 / deg).epsilon(1e-14));
  }
}

TEST_CASE("smooth integrands converge") {
  const double got = gauss_legendre_integrate([](double x) { return std::exp(-x * x); }, -1.0, 2.0, 64);
  const double want = 0.5 * std::sqrt(std::numbers::pi) * (std::erf(2.0) + std::erf(1.0));
  CHECK(got == doctest::Approx(want).epsilon(1e-15));
}

TEST_CASE("trapezoid weights and rule") {
  const auto w = trapezoid_weights(5, 2.0);
  REQUIRE(w.size() == 5);
  CHECK(w[0] == doctest::Approx(0.25));
  CHECK(w[2] == doctest::Approx(0.5));
  std::vector<double> v = {0.0, 1.0, 2.0, 3.0, 4.0};
  CHECK(trapezoid(v, 0.5) == doctest::Approx(4.0));
}
