#include "community_forge/demand.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "community_forge/parallel.hpp"
#include "community_forge/quadrature.hpp"

namespace community_forge {

namespace {

/// Panel boundaries along the arc (as offsets from its start) at which the
/// integrand may kink: the point x itself and its antipode.
std::array<double, 4> panel_breaks(const Arc& arc, double x, double L, int& count) {
  std::array<double, 4> breaks{};
  count = 0;
  breaks[count++] = 0.0;
  double cuts[2] = {arc.forward_offset(x, L), arc.forward_offset(x + L, L)};
  if (cuts[0] > cuts[1]) std::swap(cuts[0], cuts[1]);
  for (double s : cuts) {
    if (s > 0.0 && s < arc.length) breaks[count++] = s;
  }
  breaks[count++] = arc.length;
  return breaks;
}

}  // namespace

void require_admissible(const KernelSpec& k, KernelRole role, KernelCheck check) {
  if (check == KernelCheck::skip) return;
  if (!family_admissible(k.family, role)) {
    std::ostringstream msg;
    msg << to_string(k.family) << " kernel is not admissible as " << to_string(role);
    throw KernelValidationError(msg.str());
  }
}

double demand_at(const Arc& arc, double E_p, const KernelSpec& f, double x, double L, int order,
                 KernelCheck check) {
  require_admissible(f, KernelRole::interest_f, check);
  int count = 0;
  const auto breaks = panel_breaks(arc, x, L, count);
  double total = 0.0;
  for (int p = 0; p + 1 < count; ++p) {
    total += gauss_legendre_integrate(
        [&](double s) { return kernel_eval(f, torus_distance(x, arc.start + s, L), L); },
        breaks[p], breaks[p + 1], order);
  }
  return E_p * total;
}

double demand_slope(const Arc& arc, double E_p, const KernelSpec& f, double x, double L) {
  if (arc.length >= 2.0 * L) return 0.0;
  const double a = arc.start;
  const double b = arc.start + arc.length;
  return E_p * (kernel_eval(f, torus_distance(x, a, L), L) - kernel_eval(f, torus_distance(x, b, L), L));
}

double demand_at_closed_form(const Arc& arc, double E_p, const KernelSpec& f, double x, double L) {
  if (f.family != KernelFamily::gaussian) {
    throw std::invalid_argument("closed-form demand is only available for the gaussian family");
  }
  const double scale = f.width * std::numbers::sqrt2;
  const double prefactor = f.amplitude * f.width * std::sqrt(std::numbers::pi / 2.0);
  int count = 0;
  const auto breaks = panel_breaks(arc, x, L, count);
  double total = 0.0;
  for (int p = 0; p + 1 < count; ++p) {
    // Inside a panel the displacement y - x moves linearly without wrapping.
    const double s_mid = 0.5 * (breaks[p] + breaks[p + 1]);
    const double half = 0.5 * (breaks[p + 1] - breaks[p]);
    const double v_mid = signed_offset(arc.start + s_mid, x, L);
    total += prefactor * (std::erf((v_mid + half) / scale) - std::erf((v_mid - half) / scale));
  }
  return E_p * total;
}

DemandProfile demand_profile(const Arc& arc, double E_p, const KernelSpec& f, int grid_n, double L,
                             int quadrature_order, KernelCheck check) {
  if (grid_n < 64) throw std::invalid_argument("demand profile needs grid_n >= 64");
  if (!(E_p > 0.0)) throw std::invalid_argument("consumption rate E_p must be positive");
  require_admissible(f, KernelRole::interest_f, check);
  DemandProfile profile{arc, E_p, f, L, quadrature_order, check, ring_grid(static_cast<std::size_t>(grid_n), L)};
  auto& values = profile.values;
  parallel_for(values.size(), [&](std::size_t i) { values.values[i] = profile.at(values.coord(i)); });
  return profile;
}

PropertyReport demand_properties_check(const DemandProfile& profile, double concavity_tol) {
  PropertyReport report;
  const auto& grid = profile.values;
  const double L = profile.L;
  const double mid = profile.mid();
  const double peak = grid.max();
  const std::size_t n = grid.size();

  double sym = 0.0;
  for (std::size_t k = 1; k <= n / 2; ++k) {
    const double delta = grid.step * static_cast<double>(k);
    sym = std::max(sym, std::fabs(profile.at(mid + delta) - profile.at(mid - delta)));
  }
  const double sym_rel = peak > 0.0 ? sym / peak : sym;
  report.add("symmetry", sym_rel < 1e-6, sym_rel, 1e-6, "max |P(mid+d) - P(mid-d)| / max P");

  std::size_t triples = 0;
  double worst_d2 = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = (i + n - 1) % n;
    const std::size_t hi = (i + 1) % n;
    if (!profile.arc.contains(grid.coord(lo), L) || !profile.arc.contains(grid.coord(i), L) ||
        !profile.arc.contains(grid.coord(hi), L)) {
      continue;
    }
    // Skip triples that straddle the arc end when it wraps all the way round.
    if (profile.arc.forward_offset(grid.coord(hi), L) < profile.arc.forward_offset(grid.coord(lo), L)) continue;
    ++triples;
    worst_d2 = std::max(worst_d2, grid.values[lo] - 2.0 * grid.values[i] + grid.values[hi]);
  }
  const double bound = -concavity_tol * peak;
  report.add("concavity", triples > 0 && worst_d2 < bound, worst_d2, bound,
             std::to_string(triples) + " interior triples");

  // Walk the ring outward from the midpoint: strictly rising toward mid on the
  // left, strictly falling away from it on the right.
  std::vector<std::pair<double, double>> by_offset(n);
  for (std::size_t i = 0; i < n; ++i) {
    by_offset[i] = {signed_offset(grid.coord(i), mid, L), grid.values[i]};
  }
  std::sort(by_offset.begin(), by_offset.end());
  std::size_t violations = 0;
  for (std::size_t i = 1; i < n; ++i) {
    const auto& [u0, p0] = by_offset[i - 1];
    const auto& [u1, p1] = by_offset[i];
    if (u1 <= 0.0 && !(p1 > p0)) ++violations;
    if (u0 >= 0.0 && !(p1 < p0)) ++violations;
  }
  report.add("monotone", violations == 0, static_cast<double>(violations), 0.0,
             "grid pairs out of order around the midpoint");

  const double arg_off = std::fabs(signed_offset(grid.coord(grid.argmax()), mid, L));
  report.add("argmax", arg_off <= grid.step * (1.0 + 1e-9), arg_off, grid.step,
             "distance of grid argmax from the arc midpoint");
  return report;
}

}  // namespace community_forge
