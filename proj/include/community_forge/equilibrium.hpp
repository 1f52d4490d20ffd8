#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "community_forge/demand.hpp"
#include "community_forge/numerics.hpp"
#include "community_forge/production.hpp"
#include "community_forge/utility.hpp"

namespace community_forge {

struct GlobalParams {
  double L = 1.0;
  double c = 0.0;    // processing cost per item read
  double E_p = 1.0;  // consumption rate budget
  double E_q = 1.0;  // production rate budget
  KernelSpec f;      // interest
  KernelSpec g;      // ability

  /// Throws std::invalid_argument on L <= 0, c < 0, E_p <= 0, E_q <= 0 and
  /// KernelValidationError on a kernel family that cannot play its role.
  void validate() const;
  /// f(0) g(0) - c; construction needs it positive.
  double peak_margin() const;
};

/// Thrown when no covering equilibrium can be built. `bound` carries the
/// interval-length bound so callers can report why.
class ConstructionError : public std::runtime_error {
 public:
  ConstructionError(const std::string& what, double bound)
      : std::runtime_error(what), bound(bound) {}
  double bound;
};

/// Largest l in [0, L] with F(l) = integral_0^l (g(0) f(x) - c) dx >= 0.
/// No community longer than this can be an equilibrium community. Returns 0
/// when g(0) f(0) <= c and L when F(L) >= 0; otherwise bisects F on the
/// stretch where it decreases, to `tol` in l.
double max_interval_length(const GlobalParams& params, double tol = 1e-10);

struct FeasibilityResult {
  bool feasible = false;
  /// f(2D) g(2D) - c, with 2D clipped to L.
  double margin = 0.0;
  /// The margin argument assumes each producer's ability support sits inside
  /// its community; set when supp(g) is wider than the arc.
  bool support_warning = false;
  std::string warning;
};

/// Sufficient condition for every producer of a community of length
/// `arc_length` to keep its gate open: f(2D) g(2D) - c > 0.
FeasibilityResult feasibility_check(double arc_length, const GlobalParams& params);

/// sup{D in (0, 2L] : feasibility_check(D).feasible} by bisection; 0 if none.
double feasibility_limit(const GlobalParams& params, double tol = 1e-12);

/// An interval community in which every consumer spends E_p and every
/// producer concentrates on its best content type.
struct CommunityState {
  Arc arc;
  double alpha = 0.0;  // aggregate consumption rate E_p |I_C|
  DemandProfile demand;
  ProductionMap production;
  UtilityProfile utility;
};

struct CommunityStructure {
  GlobalParams params;
  NumericsConfig numerics;
  std::vector<CommunityState> communities;

  std::vector<Arc> arcs() const;
  /// Index of the community whose arc holds x (half-open convention).
  int home_of(double x) const;
};

/// Builds one community on `arc`.
CommunityState build_community(const Arc& arc, const GlobalParams& params, const NumericsConfig& numerics);

/// Builds communities on the given arcs, which must cover the ring without
/// overlap. Arcs of equal length share one computation, rotated into place.
/// Gates are not required to be open; see construct_covering for that.
CommunityStructure build_structure(const GlobalParams& params, const std::vector<Arc>& arcs,
                                   const NumericsConfig& numerics);

/// Equal-length covering structure. Without K, the arc length is the largest
/// 2L/K strictly below the feasibility limit. Throws ConstructionError when
/// f(0) g(0) <= c or when any producer ends up with a closed gate.
CommunityStructure construct_covering(const GlobalParams& params, const NumericsConfig& numerics,
                                      std::optional<int> K = std::nullopt);

struct AgentDeviation {
  double y = 0.0;
  int home = -1;
  double home_consumption = 0.0;
  double best_consumption = 0.0;
  int best_consumption_community = -1;
  double home_production = 0.0;
  double best_production = 0.0;
  int best_production_community = -1;

  double consumption_gain() const { return best_consumption - home_consumption; }
  double production_gain() const { return best_production - home_production; }
};

struct NashReport {
  double max_consumption_gain = 0.0;
  double max_production_gain = 0.0;
  /// Agent with the largest gain relative to 1 + |home value|.
  double worst_agent = 0.0;
  double worst_ratio = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::vector<AgentDeviation> agents;
};

/// Deterministic sample of n agent positions: a golden-ratio Weyl sequence
/// with an offset drawn from `seed`.
std::vector<double> sample_agents(int n, double L, std::uint64_t seed);

/// Best-response check for every sampled agent. Consumption: value of
/// spending the whole budget in community C, the integral of
/// p(x|y) Q*_C(x) dx minus c times C's committed production; production:
/// max_x q(x|y) P_C(x) - alpha_C c. Both are per unit of rate. An agent
/// passes when neither best alternative beats its home community by more
/// than tol * (1 + |home value|).
NashReport verify_nash(const CommunityStructure& structure, int n_agents, double tol, std::uint64_t seed);

/// Best production value of y in community C and where it is attained. Uses
/// the concave bracket when y lies in C and a dense scan of supp q(.|y) with
/// a golden-section refinement otherwise.
std::pair<double, double> production_value(double y, const CommunityState& community,
                                           const GlobalParams& params, const NumericsConfig& numerics);

}  // namespace community_forge
