#pragma once

#include <stdexcept>

#include "community_forge/grid.hpp"
#include "community_forge/production.hpp"
#include "community_forge/report.hpp"

namespace community_forge {

/// Raised when consumer-side and producer-side totals disagree by more than
/// the integrity tolerance, which means the numerics are broken rather than
/// merely coarse.
class BalanceIntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per unit of consumption rate, what a consumer at y gets from the
/// community: the integral of p(x|y) Q*(x) dx minus c times the committed
/// production. Multiply by E_p for the consumer's utility.
double consumption_value(double y, const ProductionMap& map, const KernelSpec& f);

/// Slope of consumption_value in y for a consumer given by its offset from mid.
double consumption_value_slope(double y_offset, const ProductionMap& map, const KernelSpec& f);

/// Producer utility gate * (b* - alpha * c).
double production_utility(const ProductionTarget& target, double alpha_C, double c);

struct UtilityProfile {
  Arc arc;
  double L = 1.0;
  /// Consumer utilities U_d and producer utilities U_s on the producer grid.
  GridFunction consumer;
  GridFunction producer;
  /// Integrals over the community. The consumer total uses the trapezoid rule
  /// with the exact endpoint-derivative correction; the producer total and
  /// the closed form are sums over the same producer grid.
  double total_consumer = 0.0;
  double total_producer = 0.0;
  /// integral of P Q* dx - alpha * c * integral of gate dz.
  double total_formula = 0.0;
};

UtilityProfile utility_profile(const ProductionMap& map, const DemandProfile& demand);

/// Relative disagreement of the three community totals, normalised by the
/// largest of them (or 1 when all vanish).
double balance_residual(const UtilityProfile& u);

/// Throws BalanceIntegrityError when balance_residual exceeds integrity_tol.
void require_balance(const UtilityProfile& u, double integrity_tol);

/// "consumer_peak" and "producer_peak" (argmax within one step of mid),
/// "consumer_monotone" and "producer_monotone" (non-decreasing toward mid up
/// to 1e-9 relative), "consumer_symmetry" and "producer_symmetry".
PropertyReport utility_peak_check(const UtilityProfile& u);

}  // namespace community_forge
