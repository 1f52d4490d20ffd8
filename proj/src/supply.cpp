#include "community_forge/supply.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "community_forge/quadrature.hpp"

namespace community_forge {

namespace {

double ability(const ProductionMap& map, const ProductionTarget& t) {
  return kernel_eval(map.g, std::fabs(t.x_offset - t.y_offset), map.L);
}

/// dx*/dy at every producer: fourth-order central differences in the
/// interior, second order one node from the ends, one-sided at the ends.
std::vector<double> map_jacobian(const ProductionMap& map) {
  const auto& t = map.targets;
  const std::size_t n = t.size();
  const double h = map.y_step();
  std::vector<double> J(n);
  auto x = [&](std::size_t j) { return t[j].x_offset; };
  J[0] = (-3.0 * x(0) + 4.0 * x(1) - x(2)) / (2.0 * h);
  J[n - 1] = (3.0 * x(n - 1) - 4.0 * x(n - 2) + x(n - 3)) / (2.0 * h);
  J[1] = (x(2) - x(0)) / (2.0 * h);
  J[n - 2] = (x(n - 1) - x(n - 3)) / (2.0 * h);
  for (std::size_t j = 2; j + 2 < n; ++j) {
    J[j] = (x(j - 2) - 8.0 * x(j - 1) + 8.0 * x(j + 1) - x(j + 2)) / (12.0 * h);
  }
  return J;
}

}  // namespace

double supply_weak_integral(const ProductionMap& map, const std::function<double(double)>& phi) {
  const auto w = trapezoid_weights(map.targets.size(), map.arc.length);
  double acc = 0.0;
  for (std::size_t j = 0; j < map.targets.size(); ++j) {
    const auto& t = map.targets[j];
    if (t.gate_rate <= 0.0) continue;
    acc += w[j] * t.gate_rate * ability(map, t) * phi(t.x_star);
  }
  return acc;
}

double committed_production(const ProductionMap& map) {
  const auto w = trapezoid_weights(map.targets.size(), map.arc.length);
  double acc = 0.0;
  for (std::size_t j = 0; j < map.targets.size(); ++j) acc += w[j] * map.targets[j].gate_rate;
  return acc;
}

SupplyRepresentation supply_density(const ProductionMap& map, int x_grid_n, double singular_jacobian) {
  if (x_grid_n < 16) throw std::invalid_argument("supply density needs x_grid_n >= 16");
  const auto& t = map.targets;
  const std::size_t n = t.size();
  if (n < 5) throw std::invalid_argument("supply density needs at least 5 producers");
  for (std::size_t j = 1; j < n; ++j) {
    if (!(t[j].x_offset > t[j - 1].x_offset)) {
      throw MapInversionError("production map is not strictly increasing; cannot invert");
    }
  }

  SupplyRepresentation rep;
  rep.map = map;
  rep.support = map.image();
  const double lo = t.front().x_offset;
  const double hi = t.back().x_offset;
  const double h = map.y_step();
  const auto J = map_jacobian(map);

  GridFunction density = interval_grid(map.mid() + lo, hi - lo, static_cast<std::size_t>(x_grid_n));
  rep.flagged.assign(density.size(), false);
  const double xstep = (hi - lo) / (x_grid_n - 1);

  for (std::size_t i = 0; i < density.size(); ++i) {
    const double X = i + 1 == density.size() ? hi : lo + xstep * static_cast<double>(i);
    // Segment [x_j, x_{j+1}] containing X.
    auto it = std::upper_bound(t.begin(), t.end(), X,
                               [](double v, const ProductionTarget& p) { return v < p.x_offset; });
    std::size_t j = it == t.begin() ? 0 : static_cast<std::size_t>(it - t.begin()) - 1;
    j = std::min(j, n - 2);
    const double x0 = t[j].x_offset;
    const double x1 = t[j + 1].x_offset;
    const double m0 = h * J[j];
    const double m1 = h * J[j + 1];
    auto H = [&](double s) {
      const double s2 = s * s;
      const double s3 = s2 * s;
      return (2 * s3 - 3 * s2 + 1) * x0 + (s3 - 2 * s2 + s) * m0 + (-2 * s3 + 3 * s2) * x1 + (s3 - s2) * m1;
    };
    auto dH = [&](double s) {
      const double s2 = s * s;
      return (6 * s2 - 6 * s) * x0 + (3 * s2 - 4 * s + 1) * m0 + (-6 * s2 + 6 * s) * x1 + (3 * s2 - 2 * s) * m1;
    };
    double a = 0.0;
    double b = 1.0;
    for (int it2 = 0; it2 < 200 && b - a > 1e-15; ++it2) {
      const double m = 0.5 * (a + b);
      (H(m) < X ? a : b) = m;
    }
    const double s = 0.5 * (a + b);
    const double y_off = t[j].y_offset + s * h;
    double jac = dH(s) / h;
    if (jac < singular_jacobian) {
      jac = singular_jacobian;
      rep.flagged[i] = true;
    }
    const double gate = s < 0.5 ? t[j].gate_rate : t[j + 1].gate_rate;
    density.values[i] = gate * kernel_eval(map.g, std::fabs(X - y_off), map.L) / jac;
  }
  rep.density = std::move(density);
  return rep;
}

PropertyReport supply_properties_check(const SupplyRepresentation& rep, double concavity_tol) {
  PropertyReport report;
  const auto& map = rep.map;
  const auto& t = map.targets;
  const double half = 0.5 * map.arc.length;
  const double slack = 1e-12 * std::max(1.0, map.arc.length);
  const double lo = t.front().x_offset;
  const double hi = t.back().x_offset;
  const bool inside = lo >= -half - slack && hi <= half + slack;
  report.add("support_inclusion", inside, std::max(-half - lo, hi - half), slack,
             "overshoot of the supply support beyond the community arc");

  std::size_t wrong_side = 0;
  std::size_t nonmono = 0;
  for (std::size_t j = 0; j < t.size(); ++j) {
    const double y = t[j].y_offset;
    const double x = t[j].x_offset;
    if (x < std::min(y, 0.0) - slack || x > std::max(y, 0.0) + slack) ++wrong_side;
    if (j > 0 && !(x > t[j - 1].x_offset)) ++nonmono;
  }
  report.add("shift_toward_mid", wrong_side == 0 && nonmono == 0,
             static_cast<double>(wrong_side + nonmono), 0.0,
             "producers placed outside [y, mid] or out of order");

  if (!rep.density) return report;
  const auto& d = *rep.density;
  const std::size_t m = d.size();
  const double peak = d.max();

  double sym = 0.0;
  for (std::size_t i = 0; i < m; ++i) sym = std::max(sym, std::fabs(d.values[i] - d.values[m - 1 - i]));
  const double sym_rel = peak > 0.0 ? sym / peak : sym;
  report.add("symmetry", sym_rel < 1e-4, sym_rel, 1e-4, "max |Q(mid+d) - Q(mid-d)| / max Q");

  double worst = -std::numeric_limits<double>::infinity();
  std::size_t triples = 0;
  for (std::size_t i = 1; i + 1 < m; ++i) {
    if (rep.flagged[i - 1] || rep.flagged[i] || rep.flagged[i + 1]) continue;
    ++triples;
    worst = std::max(worst, d.values[i - 1] - 2.0 * d.values[i] + d.values[i + 1]);
  }
  const double bound = concavity_tol * peak;
  report.add("concavity", triples == 0 || worst <= bound, worst, bound,
             std::to_string(triples) + " interior triples");

  const double arg_off = std::fabs(d.coord(d.argmax()) - map.mid());
  report.add("argmax", arg_off <= d.step * (1.0 + 1e-9), arg_off, d.step,
             "distance of the density maximum from the arc midpoint");
  return report;
}

}  // namespace community_forge
