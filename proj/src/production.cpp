#include "community_forge/production.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "community_forge/optimize.hpp"
#include "community_forge/parallel.hpp"

namespace community_forge {

namespace {

bool compact_family(KernelFamily f) {
  return f == KernelFamily::quadratic_bump || f == KernelFamily::cosine_bump;
}

}  // namespace

ProductionTarget best_content_type_at_offset(double y_offset, const DemandProfile& profile,
                                             const KernelSpec& g, double golden_rel_tol) {
  require_admissible(g, KernelRole::ability_g, profile.check);
  const double L = profile.L;
  const double mid = profile.mid();
  const double radius = support_radius(g, L);
  // Search parameter t is the distance travelled from y toward mid.
  const double toward = y_offset > 0.0 ? -1.0 : 1.0;
  const double reach = std::min(std::fabs(y_offset), radius);

  auto point = [&](double t) { return mid + y_offset + toward * t; };
  auto objective = [&](double t) { return kernel_eval(g, t, L) * profile.at(point(t)); };
  auto slope = [&](double t) {
    if (compact_family(g.family) && t >= g.width) return -1.0;
    const double x = point(t);
    return kernel_deriv(g, t, L) * profile.at(x) + kernel_eval(g, t, L) * toward * profile.slope(x);
  };

  double t_best = 0.0;
  double best = objective(0.0);
  if (reach > 0.0) {
    const auto found = golden_section_maximize(objective, 0.0, reach, golden_rel_tol);
    t_best = found.x;
    best = found.value;
    // The objective is flat to rounding within ~sqrt(eps) of the maximum, so
    // finish on the slope, which is strictly decreasing on the bracket. The
    // window grows until it straddles the sign change.
    double window = std::max(1e-6 * reach, 4.0 * golden_rel_tol * reach);
    for (int grow = 0; grow < 40; ++grow, window *= 4.0) {
      const double lo = std::max(0.0, t_best - window);
      const double hi = std::min(reach, t_best + window);
      const bool rising = lo == 0.0 ? slope(0.0) > 0.0 : slope(lo) > 0.0;
      const bool falling = slope(hi) < 0.0;
      if (rising && falling) {
        const double t_polished = bisect_sign_change(slope, lo, hi, 1e-16 * std::max(1.0, reach));
        const double v = objective(t_polished);
        if (v >= best - 8.0 * std::numeric_limits<double>::epsilon() * std::fabs(best)) {
          t_best = t_polished;
          best = v;
        }
        break;
      }
      // Maximum pinned at an end of the bracket: nothing to polish.
      if ((lo == 0.0 && !rising) || (hi == reach && !falling)) break;
    }
  }

  ProductionTarget out;
  out.y_offset = y_offset;
  out.x_offset = y_offset + toward * t_best;
  out.y = canonicalize(mid + y_offset, L);
  out.x_star = canonicalize(mid + out.x_offset, L);
  out.objective = best;
  return out;
}

ProductionTarget best_content_type(double y, const DemandProfile& profile, const KernelSpec& g,
                                   double golden_rel_tol) {
  return best_content_type_at_offset(signed_offset(y, profile.mid(), profile.L), profile, g,
                                     golden_rel_tol);
}

ProductionTarget production_gate(ProductionTarget target, double alpha_C, double c, double E_q) {
  target.gate_rate = target.objective - alpha_C * c >= 0.0 ? E_q : 0.0;
  return target;
}

bool ProductionMap::production_feasible() const {
  return std::all_of(targets.begin(), targets.end(), [&](const auto& t) { return t.gate_rate > 0.0; });
}

Arc ProductionMap::image() const {
  const double lo = targets.front().x_offset;
  const double hi = targets.back().x_offset;
  const double length = std::max(hi - lo, 1e-300);
  return Arc{canonicalize(mid() + lo, L), length};
}

ProductionMap production_map(const DemandProfile& profile, const KernelSpec& g, double E_q,
                             double alpha_C, double c, int y_grid_n, double golden_rel_tol) {
  if (y_grid_n < 128) throw std::invalid_argument("production map needs y_grid_n >= 128");
  if (!(E_q >= 0.0)) throw std::invalid_argument("production rate E_q must be non-negative");
  ProductionMap map;
  map.arc = profile.arc;
  map.L = profile.L;
  map.E_q = E_q;
  map.alpha = alpha_C;
  map.c = c;
  map.g = g;
  map.targets.resize(static_cast<std::size_t>(y_grid_n));
  const double h = profile.arc.length / (y_grid_n - 1);
  parallel_for(map.targets.size(), [&](std::size_t j) {
    // Build offsets symmetrically so mirrored producers see mirrored inputs.
    const auto jj = static_cast<double>(j);
    const auto mirror = static_cast<double>(map.targets.size() - 1 - j);
    const double u = 0.5 * (jj - mirror) * h;
    map.targets[j] = production_gate(best_content_type_at_offset(u, profile, g, golden_rel_tol),
                                     alpha_C, c, E_q);
  });
  return map;
}

PropertyReport production_map_check(const ProductionMap& map) {
  PropertyReport report;
  const auto& t = map.targets;
  const std::size_t n = t.size();
  const double h = map.y_step();
  const double slack = 1e-12 * map.arc.length;

  std::size_t outside = 0;
  for (const auto& p : t) {
    const double lo = std::min(p.y_offset, 0.0) - slack;
    const double hi = std::max(p.y_offset, 0.0) + slack;
    if (p.x_offset < lo || p.x_offset > hi) ++outside;
  }
  report.add("between", outside == 0, static_cast<double>(outside), 0.0,
             "producers whose x* leaves [y, mid]");

  std::size_t nonmono = 0;
  std::size_t nonshrink = 0;
  for (std::size_t j = 1; j < n; ++j) {
    const auto& a = t[j - 1];
    const auto& b = t[j];
    const bool left = b.y_offset <= 0.0;
    const bool right = a.y_offset >= 0.0;
    if (!(left || right)) continue;
    if (!(b.x_offset > a.x_offset)) ++nonmono;
    const double shift_a = std::fabs(a.y_offset - a.x_offset);
    const double shift_b = std::fabs(b.y_offset - b.x_offset);
    if (left && !(shift_a > shift_b)) ++nonshrink;
    if (right && !(shift_b > shift_a)) ++nonshrink;
  }
  report.add("monotone", nonmono == 0, static_cast<double>(nonmono), 0.0,
             "adjacent producer pairs with non-increasing x*");
  report.add("distance_shrink", nonshrink == 0, static_cast<double>(nonshrink), 0.0,
             "adjacent pairs where |y - x*| does not grow away from mid");

  double anti = 0.0;
  for (std::size_t j = 0; j < n; ++j) anti = std::max(anti, std::fabs(t[j].x_offset + t[n - 1 - j].x_offset));
  report.add("antisymmetry", anti < 1e-6, anti, 1e-6, "max |x*(mid+d) - mid + x*(mid-d) - mid|");

  double jump = 0.0;
  for (std::size_t j = 1; j < n; ++j) jump = std::max(jump, std::fabs(t[j].x_offset - t[j - 1].x_offset));
  report.add("continuity", jump <= 2.0 * h, jump, 2.0 * h, "largest step of x* between neighbours");

  const auto closed = static_cast<double>(std::count_if(t.begin(), t.end(), [](const auto& p) {
    return p.gate_rate <= 0.0;
  }));
  report.add("gates_open", closed == 0.0, closed, 0.0, "producers with a closed gate");
  return report;
}

}  // namespace community_forge
