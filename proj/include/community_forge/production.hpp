#pragma once

#include <vector>

#include "community_forge/demand.hpp"
#include "community_forge/report.hpp"

namespace community_forge {

/// A producer's best response inside one community: the single content type
/// it concentrates its whole production rate on, the value b* = q(x*|y) P(x*)
/// of that choice, and the rate it commits (0 or E_q).
///
/// The optimal production allocation is a point mass E_q at x_star. It is
/// never materialised as a function; integrals against it are taken in weak
/// form over the producer grid.
struct ProductionTarget {
  double y = 0.0;
  double x_star = 0.0;
  double objective = 0.0;
  double gate_rate = 0.0;
  /// y and x_star measured from the community midpoint along the arc, unwrapped.
  double y_offset = 0.0;
  double x_offset = 0.0;
};

/// Maximises x -> q(x|y) P(x) on the bracket between y and the arc midpoint,
/// clipped to the support of q(.|y), where the objective is strictly concave
/// for admissible kernels. Golden-section search locates the maximum; a
/// bisection on the analytic slope then polishes it to machine precision.
/// A zero-width bracket gives x* = y. gate_rate is left at 0.
ProductionTarget best_content_type(double y, const DemandProfile& profile, const KernelSpec& g,
                                   double golden_rel_tol = 1e-10);

/// Same, with the producer given by its offset from the arc midpoint. Lets a
/// grid over a full-ring arc keep its two coincident ends apart.
ProductionTarget best_content_type_at_offset(double y_offset, const DemandProfile& profile,
                                             const KernelSpec& g, double golden_rel_tol = 1e-10);

/// Opens the gate (rate E_q) iff objective - alpha_C * c >= 0.
ProductionTarget production_gate(ProductionTarget target, double alpha_C, double c, double E_q);

struct ProductionMap {
  Arc arc;
  double L = 1.0;
  double E_q = 1.0;
  double alpha = 0.0;
  double c = 0.0;
  KernelSpec g;
  /// Producers on a uniform grid over the closed arc, both ends included.
  std::vector<ProductionTarget> targets;

  double mid() const { return arc_mid(arc, L); }
  double y_step() const { return arc.length / static_cast<double>(targets.size() - 1); }
  /// True iff every producer's gate is open.
  bool production_feasible() const;
  /// Image of y -> x*_y as an arc. Degenerates to a point-sized arc when the
  /// map collapses.
  Arc image() const;
};

/// Throws std::invalid_argument for y_grid_n < 128.
ProductionMap production_map(const DemandProfile& profile, const KernelSpec& g, double E_q,
                             double alpha_C, double c, int y_grid_n, double golden_rel_tol = 1e-10);

/// Shape checks on a production map: "between" (x*_y weakly between y and
/// mid), "monotone" (strictly increasing on each half), "distance_shrink"
/// (|y - x*_y| strictly larger farther from mid), "antisymmetry", "continuity"
/// and "gates_open".
PropertyReport production_map_check(const ProductionMap& map);

}  // namespace community_forge
