#include "community_forge/numerics.hpp"

#include <stdexcept>
#include <string>

namespace community_forge {

void NumericsConfig::validate() const {
  auto need = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("numerics: ") + what);
  };
  need(ring_grid_n >= min_ring_grid, "ring_grid_n must be >= 64");
  need(y_grid_n >= min_y_grid, "y_grid_n must be >= 128");
  need(x_grid_n >= min_x_grid, "x_grid_n must be >= 16");
  need(quadrature_order >= 2 && quadrature_order <= 1024, "quadrature_order must lie in [2, 1024]");
  need(nash_agents >= 1, "nash_agents must be positive");
  need(golden_rel_tol > 0.0 && bisection_tol > 0.0 && nash_tol > 0.0 && balance_tol > 0.0 &&
           balance_integrity_tol > 0.0 && singular_jacobian > 0.0 && concavity_tol > 0.0,
       "tolerances must be positive");
}

}  // namespace community_forge
