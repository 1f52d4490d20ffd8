#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace community_forge {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Rule with n nodes, computed by Newton iteration on P_n. Cached per n;
/// the returned reference stays valid for the life of the program.
const GaussLegendreRule& gauss_legendre(int n);

/// Integrates fn over [a, b] with a single n-point Gauss-Legendre panel.
template <class Fn>
double gauss_legendre_integrate(Fn&& fn, double a, double b, int n) {
  const auto& rule = gauss_legendre(n);
  const double half = 0.5 * (b - a);
  const double centre = 0.5 * (a + b);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    acc += rule.weights[i] * fn(centre + half * rule.nodes[i]);
  }
  return acc * half;
}

/// Composite trapezoid weights for n equally spaced samples over a span.
std::vector<double> trapezoid_weights(std::size_t n, double span);

/// Trapezoid rule over uniformly spaced samples.
double trapezoid(std::span<const double> values, double step);

}  // namespace community_forge
