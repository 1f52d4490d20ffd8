#include "community_forge/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "community_forge/optimize.hpp"
#include "community_forge/parallel.hpp"
#include "community_forge/quadrature.hpp"

namespace community_forge {

void GlobalParams::validate() const {
  if (!std::isfinite(L) || L <= 0.0) throw std::invalid_argument("L must be positive");
  if (!std::isfinite(c) || c < 0.0) throw std::invalid_argument("processing cost c must be non-negative");
  if (!std::isfinite(E_p) || E_p <= 0.0) throw std::invalid_argument("E_p must be positive");
  if (!std::isfinite(E_q) || E_q <= 0.0) throw std::invalid_argument("E_q must be positive");
  require_admissible(f, KernelRole::interest_f, KernelCheck::enforce);
  require_admissible(g, KernelRole::ability_g, KernelCheck::enforce);
}

double GlobalParams::peak_margin() const { return kernel_eval(f, 0.0, L) * kernel_eval(g, 0.0, L) - c; }

double max_interval_length(const GlobalParams& params, double tol) {
  const double L = params.L;
  const double g0 = kernel_eval(params.g, 0.0, L);
  const double c = params.c;
  auto integrand = [&](double x) { return g0 * kernel_eval(params.f, x, L) - c; };
  if (integrand(0.0) <= 0.0) return 0.0;
  if (integrand(L) >= 0.0) return L;
  // F rises until the integrand changes sign at l0 and falls afterwards.
  const double l0 = bisect_sign_change(integrand, 0.0, L, 1e-15 * L);
  auto F = [&](double l) {
    // Split at l0 so each panel sees a smooth, single-signed integrand.
    const double a = std::min(l, l0);
    double acc = gauss_legendre_integrate(integrand, 0.0, a, 64);
    if (l > l0) acc += gauss_legendre_integrate(integrand, l0, l, 64);
    return acc;
  };
  if (F(L) >= 0.0) return L;
  return bisect_sign_change([&](double l) { return F(l) >= 0.0 ? 1.0 : -1.0; }, l0, L, tol);
}

namespace {

double feasibility_margin(double arc_length, const GlobalParams& params) {
  const double d = std::min(2.0 * arc_length, params.L);
  return kernel_eval(params.f, d, params.L) * kernel_eval(params.g, d, params.L) - params.c;
}

}  // namespace

FeasibilityResult feasibility_check(double arc_length, const GlobalParams& params) {
  if (!(arc_length > 0.0)) throw std::invalid_argument("arc length must be positive");
  FeasibilityResult out;
  out.margin = feasibility_margin(arc_length, params);
  out.feasible = out.margin > 0.0;
  const double radius = support_radius(params.g, params.L);
  if (radius > arc_length) {
    out.support_warning = true;
    std::ostringstream msg;
    msg << "ability support radius " << radius << " exceeds the arc length " << arc_length
        << "; edge producers reach outside their community";
    out.warning = msg.str();
  }
  return out;
}

double feasibility_limit(const GlobalParams& params, double tol) {
  const double top = 2.0 * params.L;
  if (feasibility_margin(top, params) > 0.0) return top;
  if (params.peak_margin() <= 0.0) return 0.0;
  return bisect_sign_change([&](double d) { return feasibility_margin(d, params); }, 0.0, top, tol);
}

std::vector<Arc> CommunityStructure::arcs() const {
  std::vector<Arc> out;
  out.reserve(communities.size());
  for (const auto& c : communities) out.push_back(c.arc);
  return out;
}

int CommunityStructure::home_of(double x) const { return locate_arc(arcs(), x, params.L); }

CommunityState build_community(const Arc& arc, const GlobalParams& params, const NumericsConfig& numerics) {
  CommunityState state;
  state.arc = arc;
  state.alpha = params.E_p * arc.length;
  state.demand = demand_profile(arc, params.E_p, params.f, numerics.ring_grid_n, params.L, numerics.quadrature_order);
  state.production = production_map(state.demand, params.g, params.E_q, state.alpha, params.c, numerics.y_grid_n,
                                     numerics.golden_rel_tol);
  state.utility = utility_profile(state.production, state.demand);
  return state;
}

namespace {

/// `source` moved onto `arc`, an arc of the same length. Everything the
/// model computes depends on positions only through offsets from the
/// midpoint, so rotation changes coordinates and nothing else.
CommunityState rotate_community(const CommunityState& source, const Arc& arc, const GlobalParams& params,
                                const NumericsConfig& numerics) {
  CommunityState state = source;
  state.arc = arc;
  state.demand = demand_profile(arc, params.E_p, params.f, numerics.ring_grid_n, params.L, numerics.quadrature_order);
  state.production.arc = arc;
  const double mid = arc_mid(arc, params.L);
  for (auto& t : state.production.targets) {
    t.y = canonicalize(mid + t.y_offset, params.L);
    t.x_star = canonicalize(mid + t.x_offset, params.L);
  }
  state.utility.arc = arc;
  state.utility.consumer.origin = mid + state.production.targets.front().y_offset;
  state.utility.producer.origin = state.utility.consumer.origin;
  return state;
}

void require_cover(const std::vector<Arc>& arcs, double L) {
  if (arcs.empty()) throw std::invalid_argument("a community structure needs at least one arc");
  double total = 0.0;
  for (const auto& a : arcs) total += a.length;
  if (std::fabs(total - 2.0 * L) > 1e-9 * L) {
    throw std::invalid_argument("community arcs must cover the ring exactly once");
  }
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    for (std::size_t j = 0; j < arcs.size(); ++j) {
      // Abutting arcs meet at a shared endpoint up to rounding.
      if (i != j && arcs[j].forward_offset(arcs[i].start, L) < arcs[j].length - 1e-9 * L) {
        throw std::invalid_argument("community arcs overlap");
      }
    }
  }
}

}  // namespace

CommunityStructure build_structure(const GlobalParams& params, const std::vector<Arc>& arcs,
                                   const NumericsConfig& numerics) {
  params.validate();
  numerics.validate();
  require_cover(arcs, params.L);
  CommunityStructure s;
  s.params = params;
  s.numerics = numerics;
  s.communities.reserve(arcs.size());
  std::map<double, std::size_t> built;  // arc length -> first community of that length
  for (const auto& arc : arcs) {
    const auto it = built.find(arc.length);
    if (it == built.end()) {
      built.emplace(arc.length, s.communities.size());
      s.communities.push_back(build_community(arc, params, numerics));
    } else {
      s.communities.push_back(rotate_community(s.communities[it->second], arc, params, numerics));
    }
  }
  return s;
}

CommunityStructure construct_covering(const GlobalParams& params, const NumericsConfig& numerics,
                                      std::optional<int> K) {
  params.validate();
  if (params.peak_margin() <= 0.0) {
    std::ostringstream msg;
    msg << "no covering equilibrium: f(0) g(0) - c = " << params.peak_margin()
        << " <= 0, so the longest admissible community has length " << max_interval_length(params);
    throw ConstructionError(msg.str(), max_interval_length(params));
  }
  const double two_L = 2.0 * params.L;
  int k = 0;
  if (K) {
    if (*K < 1) throw std::invalid_argument("K must be at least 1");
    k = *K;
  } else {
    const double limit = feasibility_limit(params);
    k = static_cast<int>(std::ceil(two_L / limit - 1e-12));
    k = std::max(k, 1);
    while (!feasibility_check(two_L / k, params).feasible) ++k;
  }
  CommunityStructure s = build_structure(params, partition_ring(k, params.L), numerics);
  for (const auto& c : s.communities) {
    if (!c.production.production_feasible()) {
      std::ostringstream msg;
      msg << "community of length " << c.arc.length << " has producers with closed gates; "
          << "interval-length bound is " << max_interval_length(params);
      throw ConstructionError(msg.str(), max_interval_length(params));
    }
  }
  return s;
}

std::vector<double> sample_agents(int n, double L, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("agent count must be non-negative");
  std::mt19937_64 rng(seed);
  const double offset = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  const double step = std::numbers::phi - 1.0;
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double u = std::fmod(offset + step * i, 1.0);
    out[static_cast<std::size_t>(i)] = canonicalize(-L + 2.0 * L * u, L);
  }
  return out;
}

std::pair<double, double> production_value(double y, const CommunityState& community,
                                           const GlobalParams& params, const NumericsConfig& numerics) {
  const double cost = community.alpha * params.c;
  const double L = params.L;
  if (community.arc.contains(y, L)) {
    const auto t = best_content_type(y, community.demand, params.g, numerics.golden_rel_tol);
    return {t.objective - cost, t.x_star};
  }
  // Outside the community the objective need not be concave: scan the
  // support of q(.|y), then refine around the best sample.
  const double radius = std::min(support_radius(params.g, L), L);
  auto objective = [&](double s) {
    return kernel_eval(params.g, std::fabs(s), L) * community.demand.at(y + s);
  };
  constexpr int samples = 256;
  const double ds = 2.0 * radius / samples;
  int best_i = 0;
  double best = -1.0;
  for (int i = 0; i <= samples; ++i) {
    const double v = objective(-radius + ds * i);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  const double centre = -radius + ds * best_i;
  const auto refined = golden_section_maximize(objective, std::max(-radius, centre - ds),
                                               std::min(radius, centre + ds), numerics.golden_rel_tol);
  double s_best = centre;
  if (refined.value > best) {
    best = refined.value;
    s_best = refined.x;
  }
  return {best - cost, canonicalize(y + s_best, L)};
}

namespace {

/// Upper bound on the production value of y in a community: g(0) times the
/// demand at the point of supp q(.|y) closest to the community midpoint,
/// where demand is largest.
double production_bound(double y, const CommunityState& community, const GlobalParams& params) {
  const double L = params.L;
  const double radius = std::min(support_radius(params.g, L), L);
  const double off = signed_offset(community.production.mid(), y, L);
  const double reach = std::clamp(off, -radius, radius);
  return kernel_eval(params.g, 0.0, L) * community.demand.at(y + reach) - community.alpha * params.c;
}

}  // namespace

NashReport verify_nash(const CommunityStructure& structure, int n_agents, double tol, std::uint64_t seed) {
  const auto& params = structure.params;
  const auto& communities = structure.communities;
  const auto ys = sample_agents(n_agents, params.L, seed);
  const auto arcs = structure.arcs();

  NashReport report;
  report.tol = tol;
  report.agents.resize(ys.size());
  parallel_for(ys.size(), [&](std::size_t i) {
    AgentDeviation a;
    a.y = ys[i];
    a.home = locate_arc(arcs, a.y, params.L);
    if (a.home < 0) throw std::logic_error("agent outside every community");
    const auto& home = communities[static_cast<std::size_t>(a.home)];

    a.home_consumption = consumption_value(a.y, home.production, params.f);
    a.best_consumption = a.home_consumption;
    a.best_consumption_community = a.home;
    a.home_production = production_value(a.y, home, params, structure.numerics).first;
    a.best_production = a.home_production;
    a.best_production_community = a.home;

    for (std::size_t k = 0; k < communities.size(); ++k) {
      if (static_cast<int>(k) == a.home) continue;
      const auto& other = communities[k];
      const double v = consumption_value(a.y, other.production, params.f);
      if (v > a.best_consumption) {
        a.best_consumption = v;
        a.best_consumption_community = static_cast<int>(k);
      }
      if (production_bound(a.y, other, params) <= a.best_production) continue;
      const double w = production_value(a.y, other, params, structure.numerics).first;
      if (w > a.best_production) {
        a.best_production = w;
        a.best_production_community = static_cast<int>(k);
      }
    }
    report.agents[i] = a;
  });

  report.pass = true;
  report.worst_ratio = report.agents.empty() ? 0.0 : -std::numeric_limits<double>::infinity();
  for (const auto& a : report.agents) {
    report.max_consumption_gain = std::max(report.max_consumption_gain, a.consumption_gain());
    report.max_production_gain = std::max(report.max_production_gain, a.production_gain());
    const double rc = a.consumption_gain() / (1.0 + std::fabs(a.home_consumption));
    const double rp = a.production_gain() / (1.0 + std::fabs(a.home_production));
    const double ratio = std::max(rc, rp);
    if (ratio > report.worst_ratio) {
      report.worst_ratio = ratio;
      report.worst_agent = a.y;
    }
    if (!(rc <= tol) || !(rp <= tol)) report.pass = false;
  }
  return report;
}

}  // namespace community_forge
