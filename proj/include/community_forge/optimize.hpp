#pragma once

#include <cmath>
#include <functional>
#include <utility>

namespace community_forge {

struct ScalarOptimum {
  double x = 0.0;
  double value = 0.0;
  int evaluations = 0;
};

/// Golden-section search for the maximum of a unimodal fn on [lo, hi], run
/// until the bracket is narrower than rel_tol * (hi - lo). Ties between the
/// two interior probes shrink toward `lo`, so flat objectives resolve to the
/// low end of the bracket.
template <class Fn>
ScalarOptimum golden_section_maximize(Fn&& fn, double lo, double hi, double rel_tol) {
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  ScalarOptimum out;
  if (!(hi > lo)) {
    out.x = lo;
    out.value = fn(lo);
    out.evaluations = 1;
    return out;
  }
  const double stop = rel_tol * (hi - lo);
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = fn(c);
  double fd = fn(d);
  int evals = 2;
  while (b - a > stop && evals < 400) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = fn(d);
    }
    ++evals;
  }
  // Endpoints can beat the interior probes when the maximum sits on the
  // bracket boundary; pick the best of what was seen.
  double best_x = fc >= fd ? c : d;
  double best = std::max(fc, fd);
  const double fa = fn(lo);
  const double fb = fn(hi);
  evals += 2;
  if (fa >= best) {
    best = fa;
    best_x = lo;
  }
  if (fb > best) {
    best = fb;
    best_x = hi;
  }
  out.x = best_x;
  out.value = best;
  out.evaluations = evals;
  return out;
}

/// Root of a function that is positive at lo and non-positive at hi, by
/// bisection to absolute tolerance tol.
template <class Fn>
double bisect_sign_change(Fn&& fn, double lo, double hi, double tol, int max_iter = 200) {
  for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (fn(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace community_forge
