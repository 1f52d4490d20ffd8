#pragma once

#include "community_forge/geometry.hpp"
#include "community_forge/grid.hpp"
#include "community_forge/kernels.hpp"
#include "community_forge/report.hpp"

namespace community_forge {

/// Whether model entry points insist on role-admissible kernel families.
/// `skip` exists for deliberately degenerate diagnostics.
enum class KernelCheck { enforce, skip };

class KernelValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws KernelValidationError if the family may not play `role`.
void require_admissible(const KernelSpec& k, KernelRole role, KernelCheck check);

/// Demand of an interval community with uniform consumption rate E_p at
/// content type x:
///
///   P(x) = E_p * integral over the arc of f(||x - y||) dy
///
/// by composite Gauss-Legendre quadrature with `order` nodes per panel. The
/// arc is split at x and at the point antipodal to x, where the integrand
/// y -> f(||x - y||) can lose smoothness.
double demand_at(const Arc& arc, double E_p, const KernelSpec& f, double x, double L,
                 int order = 64, KernelCheck check = KernelCheck::enforce);

/// dP/dx = E_p * (f(||x - a||) - f(||x - b||)) for the arc [a, b). Exact.
double demand_slope(const Arc& arc, double E_p, const KernelSpec& f, double x, double L);

/// Error-function antiderivative path for the gaussian family. Used to cross
/// check the quadrature; throws std::invalid_argument for other families.
double demand_at_closed_form(const Arc& arc, double E_p, const KernelSpec& f, double x, double L);

/// Demand sampled on a uniform ring grid, together with everything needed to
/// evaluate it exactly off-grid.
struct DemandProfile {
  Arc arc;
  double E_p = 1.0;
  KernelSpec f;
  double L = 1.0;
  int quadrature_order = 64;
  KernelCheck check = KernelCheck::enforce;
  GridFunction values;

  double at(double x) const { return demand_at(arc, E_p, f, x, L, quadrature_order, check); }
  double slope(double x) const { return demand_slope(arc, E_p, f, x, L); }
  double mid() const { return arc_mid(arc, L); }
};

/// Throws std::invalid_argument for grid_n < 64.
DemandProfile demand_profile(const Arc& arc, double E_p, const KernelSpec& f, int grid_n,
                             double L, int quadrature_order = 64,
                             KernelCheck check = KernelCheck::enforce);

/// Symmetry about the arc midpoint, strict discrete concavity inside the arc,
/// monotonicity toward the midpoint around the whole ring, and the location of
/// the grid maximum. Checks are named "symmetry", "concavity", "monotone" and
/// "argmax".
PropertyReport demand_properties_check(const DemandProfile& profile, double concavity_tol = 1e-12);

}  // namespace community_forge
