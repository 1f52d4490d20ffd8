#include "community_forge/filtering.hpp"

#include <algorithm>
#include <cmath>

#include "community_forge/optimize.hpp"
#include "community_forge/parallel.hpp"
#include "community_forge/quadrature.hpp"

namespace community_forge {

FilterSpec FilterSpec::kernel(const KernelSpec& h, double center) {
  require_admissible(h, KernelRole::filter_h, KernelCheck::enforce);
  FilterSpec s;
  s.kind = Kind::kernel;
  s.h = h;
  s.center = center;
  return s;
}

FilterSpec FilterSpec::threshold_at(double t, double center) {
  if (!(t >= 0.0)) throw std::invalid_argument("filter threshold must be non-negative");
  FilterSpec s;
  s.kind = Kind::threshold;
  s.threshold = t;
  s.center = center;
  return s;
}

FilterSpec FilterSpec::pass_all(double center) {
  return kernel(KernelSpec::make(KernelFamily::constant, 1.0, 1.0), center);
}

FilterSpec FilterSpec::block_all(const KernelSpec& f, double L, double center) {
  return threshold_at(kernel_eval(f, 0.0, L), center);
}

double FilterSpec::pass(double x, const KernelSpec& f, double L) const {
  const double d = torus_distance(x, center, L);
  if (kind == Kind::kernel) return kernel_eval(h, d, L);
  return kernel_eval(f, d, L) > threshold ? 1.0 : 0.0;
}

double threshold_radius(const KernelSpec& f, double t, double L) {
  if (kernel_eval(f, 0.0, L) <= t) return 0.0;
  if (kernel_eval(f, L, L) > t) return L;
  return bisect_sign_change([&](double d) { return kernel_eval(f, d, L) - t; }, 0.0, L, 1e-15 * L);
}

namespace {

/// gate(z) (q(x*_z|z) P(x*_z) - alpha c) at every producer node.
std::vector<double> filter_integrand(const CommunityState& community) {
  const auto& map = community.production;
  std::vector<double> out(map.targets.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const auto& t = map.targets[j];
    out[j] = t.gate_rate * (t.objective - map.alpha * map.c);
  }
  return out;
}

/// Integral over z of the piecewise-linear interpolant of `values`,
/// restricted to producers whose x* offset lies in (a, b).
double clipped_integral(const ProductionMap& map, const std::vector<double>& values, double a, double b) {
  const auto& t = map.targets;
  const double h = map.y_step();
  double acc = 0.0;
  for (std::size_t j = 0; j + 1 < t.size(); ++j) {
    const double x0 = t[j].x_offset;
    const double x1 = t[j + 1].x_offset;
    if (x1 <= a || x0 >= b) continue;
    double s0 = 0.0;
    double s1 = 1.0;
    if (x1 > x0) {
      s0 = std::clamp((a - x0) / (x1 - x0), 0.0, 1.0);
      s1 = std::clamp((b - x0) / (x1 - x0), 0.0, 1.0);
    }
    if (s1 <= s0) continue;
    const double v0 = values[j];
    const double v1 = values[j + 1];
    // Exact integral of (1-s) v0 + s v1 over [s0, s1].
    const double lin = (s1 - s0) * v0 + 0.5 * (s1 * s1 - s0 * s0) * (v1 - v0);
    acc += h * lin;
  }
  return acc;
}

}  // namespace

double filtered_total_utility(const CommunityState& community, const FilterSpec& filter,
                              const GlobalParams& params) {
  const auto& map = community.production;
  const double L = params.L;
  const auto values = filter_integrand(community);
  if (filter.kind == FilterSpec::Kind::kernel) {
    const auto w = trapezoid_weights(values.size(), map.arc.length);
    double acc = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) {
      acc += w[j] * values[j] * filter.pass(map.targets[j].x_star, params.f, L);
    }
    return acc;
  }
  const double rho = threshold_radius(params.f, filter.threshold, L);
  if (rho <= 0.0) return 0.0;
  if (rho >= L) return clipped_integral(map, values, -2.0 * L, 2.0 * L);
  // The passed arc, in offsets from the community midpoint; shifted copies
  // catch an arc that wraps past the seam relative to the community.
  const double centre = signed_offset(filter.center, map.mid(), L);
  double acc = 0.0;
  for (int k = -1; k <= 1; ++k) {
    const double c = centre + 2.0 * L * k;
    acc += clipped_integral(map, values, c - rho, c + rho);
  }
  return acc;
}

FilterAgentResult optimal_filter_agent(const CommunityState& community, const KernelSpec& h,
                                       const GlobalParams& params, int y_grid_n) {
  if (y_grid_n < 3) throw std::invalid_argument("filter agent scan needs at least 3 candidates");
  require_admissible(h, KernelRole::filter_h, KernelCheck::enforce);
  const std::size_t n = static_cast<std::size_t>(y_grid_n | 1);
  const double length = community.arc.length;
  const double mid = community.production.mid();
  const double step = length / static_cast<double>(n - 1);
  FilterAgentResult out;
  out.totals = interval_grid(mid - 0.5 * length, length, n);
  const std::size_t centre = (n - 1) / 2;
  parallel_for(n, [&](std::size_t i) {
    const double off = (static_cast<double>(i) - static_cast<double>(centre)) * step;
    out.totals.values[i] =
        filtered_total_utility(community, FilterSpec::kernel(h, canonicalize(mid + off, params.L)), params);
  });
  const double best = out.totals.max();
  const double tie = 1e-12 * std::max(std::fabs(best), 1e-300);
  std::size_t pick = 0;
  std::size_t pick_dist = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (out.totals.values[i] < best - tie) continue;
    const std::size_t dist = i > centre ? i - centre : centre - i;
    if (dist < pick_dist) {
      pick = i;
      pick_dist = dist;
    }
  }
  out.agent_offset = (static_cast<double>(pick) - static_cast<double>(centre)) * step;
  out.agent = canonicalize(mid + out.agent_offset, params.L);
  out.total = out.totals.values[pick];
  return out;
}

FilterSpec make_threshold_filter(const CommunityState& community, const GlobalParams& params) {
  const auto& t = community.production.targets;
  const double mid = community.production.mid();
  const double half_width = 0.5 * (t.back().x_offset - t.front().x_offset);
  return FilterSpec::threshold_at(kernel_eval(params.f, std::min(half_width, params.L), params.L), mid);
}

ExpertGain expert_benefit(const ProductionTarget& target, const CommunityState& community,
                          const GlobalParams& params) {
  ExpertGain out;
  out.y = target.y;
  out.q = kernel_eval(params.g, std::fabs(target.x_offset - target.y_offset), params.L);
  out.P = community.demand.at(target.x_star);
  const double cost = community.alpha * params.c;
  const double f0 = kernel_eval(params.f, 0.0, params.L);
  out.defined = out.P > cost;
  out.gain = params.E_q * (out.q * f0 * (out.P - cost) - (out.q * out.P - cost));
  return out;
}

ExpertPlan expert_routing_plan(const CommunityState& community, const GlobalParams& params) {
  const auto& targets = community.production.targets;
  const std::size_t n = targets.size();
  ExpertPlan plan;
  plan.gains.resize(n);
  parallel_for(n, [&](std::size_t j) { plan.gains[j] = expert_benefit(targets[j], community, params); });
  const auto w = trapezoid_weights(n, community.arc.length);
  for (std::size_t j = 0; j < n; ++j) {
    if (!(plan.gains[j].gain > 0.0)) continue;
    plan.benefiting.push_back(j);
    plan.delta_total += w[j] * plan.gains[j].gain;
    plan.t_C = std::max(plan.t_C.value_or(plan.gains[j].P), plan.gains[j].P);
  }
  plan.benefiting_fraction = static_cast<double>(plan.benefiting.size()) / static_cast<double>(n);
  std::vector<bool> is_benefiting(n, false);
  for (auto j : plan.benefiting) is_benefiting[j] = true;
  for (auto i : plan.benefiting) {
    for (std::size_t j = 0; j < n; ++j) {
      if (is_benefiting[j]) continue;
      if (plan.gains[i].q >= plan.gains[j].q && plan.gains[i].P >= plan.gains[j].P) ++plan.threshold_violations;
    }
  }
  return plan;
}

}  // namespace community_forge
