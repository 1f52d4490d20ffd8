#include "community_forge/utility.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "community_forge/parallel.hpp"
#include "community_forge/quadrature.hpp"
#include "community_forge/supply.hpp"

namespace community_forge {

namespace {

double value_at_offset(double y_offset, const ProductionMap& map, const KernelSpec& f,
                       const std::vector<double>& w) {
  double acc = 0.0;
  double committed = 0.0;
  for (std::size_t j = 0; j < map.targets.size(); ++j) {
    const auto& t = map.targets[j];
    if (t.gate_rate <= 0.0) continue;
    const double q = kernel_eval(map.g, std::fabs(t.x_offset - t.y_offset), map.L);
    const double d = std::min(std::fabs(t.x_offset - y_offset), 2.0 * map.L - std::fabs(t.x_offset - y_offset));
    acc += w[j] * t.gate_rate * q * kernel_eval(f, d, map.L);
    committed += w[j] * t.gate_rate;
  }
  return acc - map.c * committed;
}

}  // namespace

double consumption_value(double y, const ProductionMap& map, const KernelSpec& f) {
  const auto w = trapezoid_weights(map.targets.size(), map.arc.length);
  return value_at_offset(signed_offset(y, map.mid(), map.L), map, f, w);
}

double consumption_value_slope(double y_offset, const ProductionMap& map, const KernelSpec& f) {
  const auto w = trapezoid_weights(map.targets.size(), map.arc.length);
  double acc = 0.0;
  for (std::size_t j = 0; j < map.targets.size(); ++j) {
    const auto& t = map.targets[j];
    if (t.gate_rate <= 0.0) continue;
    const double q = kernel_eval(map.g, std::fabs(t.x_offset - t.y_offset), map.L);
    const double v = y_offset - t.x_offset;
    const double a = std::fabs(v);
    if (a == 0.0 || a >= map.L) continue;
    double df = 0.0;
    try {
      df = kernel_deriv(f, a, map.L);
    } catch (const KernelBoundaryError&) {
      df = 0.0;
    }
    acc += w[j] * t.gate_rate * q * df * (v > 0.0 ? 1.0 : -1.0);
  }
  return acc;
}

double production_utility(const ProductionTarget& target, double alpha_C, double c) {
  return target.gate_rate * (target.objective - alpha_C * c);
}

UtilityProfile utility_profile(const ProductionMap& map, const DemandProfile& demand) {
  const auto& t = map.targets;
  const std::size_t n = t.size();
  const double h = map.y_step();
  const auto w = trapezoid_weights(n, map.arc.length);

  UtilityProfile u;
  u.arc = map.arc;
  u.L = map.L;
  u.consumer = interval_grid(map.mid() + t.front().y_offset, map.arc.length, n);
  u.producer = u.consumer;
  parallel_for(n, [&](std::size_t j) {
    u.consumer.values[j] = demand.E_p * value_at_offset(t[j].y_offset, map, demand.f, w);
    u.producer.values[j] = production_utility(t[j], map.alpha, map.c);
  });

  // Euler-Maclaurin endpoint term. U_d is smooth in y, and its slope at the
  // ends is known exactly, so the rule becomes fourth order.
  const double slope_lo = demand.E_p * consumption_value_slope(t.front().y_offset, map, demand.f);
  const double slope_hi = demand.E_p * consumption_value_slope(t.back().y_offset, map, demand.f);
  u.total_consumer = trapezoid(u.consumer.values, h) - h * h / 12.0 * (slope_hi - slope_lo);
  u.total_producer = trapezoid(u.producer.values, h);
  u.total_formula = supply_weak_integral(map, [&](double x) { return demand.at(x); }) -
                    map.alpha * map.c * committed_production(map);
  return u;
}

double balance_residual(const UtilityProfile& u) {
  const double scale =
      std::max({std::fabs(u.total_consumer), std::fabs(u.total_producer), std::fabs(u.total_formula), 1e-12});
  const double spread = std::max({std::fabs(u.total_consumer - u.total_producer),
                                  std::fabs(u.total_consumer - u.total_formula),
                                  std::fabs(u.total_producer - u.total_formula)});
  return spread / scale;
}

void require_balance(const UtilityProfile& u, double integrity_tol) {
  const double r = balance_residual(u);
  if (r > integrity_tol) {
    std::ostringstream msg;
    msg << "utility balance broken: consumer total " << u.total_consumer << ", producer total "
        << u.total_producer << ", formula " << u.total_formula << " (relative spread " << r << ")";
    throw BalanceIntegrityError(msg.str());
  }
}

namespace {

void peak_checks(PropertyReport& report, const std::string& who, const GridFunction& g, double mid) {
  const std::size_t n = g.size();
  const double peak = g.max();
  const double scale = std::max(std::fabs(peak), 1e-300);
  const double arg_off = std::fabs(g.coord(g.argmax()) - mid);
  report.add(who + "_peak", arg_off <= g.step * (1.0 + 1e-9), arg_off, g.step,
             "distance of the maximum from the arc midpoint");

  // Non-decreasing toward mid from either end, up to relative rounding.
  const double tol = 1e-9 * scale;
  std::size_t bad = 0;
  const std::size_t centre = (n - 1) / 2;
  for (std::size_t j = 1; j <= centre; ++j) {
    if (g.values[j] < g.values[j - 1] - tol) ++bad;
  }
  for (std::size_t j = n - 1; j > n - 1 - centre; --j) {
    if (g.values[j - 1] < g.values[j] - tol) ++bad;
  }
  report.add(who + "_monotone", bad == 0, static_cast<double>(bad), tol,
             "neighbour pairs that fall toward the midpoint");

  double sym = 0.0;
  for (std::size_t j = 0; j < n; ++j) sym = std::max(sym, std::fabs(g.values[j] - g.values[n - 1 - j]));
  report.add(who + "_symmetry", sym <= 1e-6 * scale, sym / scale, 1e-6, "max relative mirror residual");
}

}  // namespace

PropertyReport utility_peak_check(const UtilityProfile& u) {
  PropertyReport report;
  const double mid = u.consumer.coord(0) + 0.5 * u.consumer.span();
  peak_checks(report, "consumer", u.consumer, mid);
  peak_checks(report, "producer", u.producer, mid);
  return report;
}

}  // namespace community_forge
