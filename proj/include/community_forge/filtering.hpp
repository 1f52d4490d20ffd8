#pragma once

#include <optional>
#include <vector>

#include "community_forge/equilibrium.hpp"

namespace community_forge {

/// A content filter run by the agent at `center`. A kernel filter passes
/// type x with probability h(||x - center||); a threshold filter passes x
/// iff p(x|center) > threshold, strictly.
struct FilterSpec {
  enum class Kind { kernel, threshold };
  Kind kind = Kind::kernel;
  KernelSpec h;
  double threshold = 0.0;
  double center = 0.0;

  /// Throws KernelValidationError unless h is admissible as a filter.
  static FilterSpec kernel(const KernelSpec& h, double center);
  /// Throws std::invalid_argument for a negative threshold.
  static FilterSpec threshold_at(double t, double center);
  /// r = 1 everywhere.
  static FilterSpec pass_all(double center = 0.0);
  /// r = 0 everywhere, as the threshold f(0) that nothing exceeds.
  static FilterSpec block_all(const KernelSpec& f, double L, double center = 0.0);

  double pass(double x, const KernelSpec& f, double L) const;
};

/// Half-width of the region a threshold filter passes: sup{d : f(d) > t},
/// 0 when t >= f(0) and L when f stays above t everywhere.
double threshold_radius(const KernelSpec& f, double t, double L);

/// Total utility rate of a community whose content passes through `filter`:
///
///   sum over producers z of  w_z * gate(z) * r(x*_z) * (q(x*_z|z) P(x*_z) - alpha c)
///
/// The cost is collapsed through the same point masses as the reward. Kernel
/// filters are sampled at the producer nodes. A threshold filter passes an
/// arc of content, whose preimage under the production map is clipped cell
/// by cell with linear interpolation, so a threshold at the edge of the
/// supply support loses nothing.
double filtered_total_utility(const CommunityState& community, const FilterSpec& filter,
                              const GlobalParams& params);

struct FilterAgentResult {
  double agent = 0.0;
  double agent_offset = 0.0;  // from the community midpoint
  double total = 0.0;
  GridFunction totals;        // filtered total for each candidate agent
};

/// Best agent in the community to run the kernel filter h, by scanning an
/// odd grid of candidates over the arc (so the midpoint is a candidate).
/// Totals within 1e-12 relative of the best count as ties; ties go to the
/// candidate closest to the midpoint.
FilterAgentResult optimal_filter_agent(const CommunityState& community, const KernelSpec& h,
                                       const GlobalParams& params, int y_grid_n);

/// Threshold filter run by the midpoint agent with threshold
/// t0 = min of p(x|mid) over the supply support, i.e. f at the support's
/// half-width.
FilterSpec make_threshold_filter(const CommunityState& community, const GlobalParams& params);

struct ExpertGain {
  double y = 0.0;
  double gain = 0.0;
  double P = 0.0;  // demand at the produced type
  double q = 0.0;  // relevance of the produced content
  /// False when P <= alpha c; the gain is still computed.
  bool defined = true;
};

/// Change in a producer's utility rate when its content is routed through
/// the expert at x*_y, who forwards with probability q f(0):
///
///   E_q * ( q f(0) (P - alpha c) - (q P - alpha c) )
///
/// The expert's own reading cost is not charged.
ExpertGain expert_benefit(const ProductionTarget& target, const CommunityState& community,
                          const GlobalParams& params);

struct ExpertPlan {
  std::vector<ExpertGain> gains;     // one per producer grid node
  std::vector<std::size_t> benefiting;
  /// Largest demand P(x*_y) among benefiting producers; empty if none.
  std::optional<double> t_C;
  /// Trapezoid integral of the gain over benefiting producers.
  double delta_total = 0.0;
  double benefiting_fraction = 0.0;
  /// Pairs (i benefiting, j not) with q_i >= q_j and P_i >= P_j. Since the
  /// gain falls in both q and P, any such pair breaks the threshold
  /// structure; for equal q it says benefiting producers have lower P.
  std::size_t threshold_violations = 0;
};

ExpertPlan expert_routing_plan(const CommunityState& community, const GlobalParams& params);

}  // namespace community_forge
