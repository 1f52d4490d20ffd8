#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "community_forge/grid.hpp"
#include "community_forge/production.hpp"
#include "community_forge/report.hpp"

namespace community_forge {

/// Integral of Q*(x) phi(x) dx, evaluated exactly through the point masses:
///
///   sum over producers z of  w_z * gate(z) * q(x*_z | z) * phi(x*_z)
///
/// with trapezoid weights w_z on the production grid. phi receives canonical
/// coordinates.
double supply_weak_integral(const ProductionMap& map, const std::function<double(double)>& phi);

/// Total production rate committed in the community, the integral of gate(z).
double committed_production(const ProductionMap& map);

class MapInversionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Supply in weak form plus, optionally, as an explicit density on its support.
struct SupplyRepresentation {
  ProductionMap map;
  /// The support I*, the image of y -> x*_y.
  Arc support;
  /// Density samples over the closed support; coordinates are unwrapped
  /// (origin = support start, possibly beyond the seam).
  std::optional<GridFunction> density;
  /// Samples where |dx*/dy| fell below the clamp.
  std::vector<bool> flagged;

  double weak_integral(const std::function<double(double)>& phi) const {
    return supply_weak_integral(map, phi);
  }
};

/// Pushforward density
///
///   Q*(x) = gate(y) * q(x | y(x)) / |dx*/dy|(y(x))
///
/// where y(x) inverts the monotone production map. dx*/dy comes from central
/// differences on the producer grid and the inverse from a monotone cubic
/// Hermite interpolant of the sampled map. Jacobians below `singular_jacobian`
/// are clamped and their samples flagged. Throws MapInversionError if the map
/// is not strictly increasing.
SupplyRepresentation supply_density(const ProductionMap& map, int x_grid_n,
                                    double singular_jacobian = 1e-8);

/// Checks "support_inclusion", "symmetry" (relative residual < 1e-4),
/// "concavity" (interior second differences <= concavity_tol * max, skipping
/// flagged samples), "argmax" (within one sample of mid) and "shift_toward_mid"
/// (every x*_y weakly between y and mid, increasing in y).
PropertyReport supply_properties_check(const SupplyRepresentation& rep, double concavity_tol = 1e-9);

}  // namespace community_forge
