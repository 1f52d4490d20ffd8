#include "community_forge/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace community_forge {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string("non-finite ") + what);
  }
}

void require_ring(double L) {
  if (!std::isfinite(L) || L <= 0.0) {
    throw std::invalid_argument("ring half-length L must be finite and positive");
  }
}

}  // namespace

double canonicalize(double x, double L) {
  require_finite(x, "coordinate");
  require_ring(L);
  const double period = 2.0 * L;
  double r = std::fmod(x + L, period);
  if (r < 0.0) r += period;
  // fmod can round up to exactly `period` for tiny negative inputs.
  if (r >= period) r = 0.0;
  return r - L;
}

double signed_offset(double to, double from, double L) {
  return canonicalize(to - from, L);
}

double torus_distance(double x, double y, double L) {
  require_finite(x, "coordinate");
  require_finite(y, "coordinate");
  require_ring(L);
  const double d = std::fabs(x - y);
  const double wrapped = std::fmod(d, 2.0 * L);
  return std::min(wrapped, 2.0 * L - wrapped);
}

Arc Arc::make(double start, double length, double L) {
  require_finite(start, "arc start");
  require_finite(length, "arc length");
  require_ring(L);
  if (!(length > 0.0) || length > 2.0 * L * (1.0 + 1e-15)) {
    throw std::invalid_argument("arc length must lie in (0, 2L]");
  }
  return Arc{canonicalize(start, L), std::min(length, 2.0 * L)};
}

double Arc::forward_offset(double x, double L) const {
  require_finite(x, "coordinate");
  require_ring(L);
  const double period = 2.0 * L;
  double r = std::fmod(x - start, period);
  if (r < 0.0) r += period;
  if (r >= period) r = 0.0;
  return r;
}

bool Arc::contains(double x, double L) const {
  if (length >= 2.0 * L) return true;
  return forward_offset(x, L) < length;
}

double Arc::at(double s, double L) const { return canonicalize(start + s, L); }

Arc Arc::rotated(double shift, double L) const {
  return Arc{canonicalize(start + shift, L), length};
}

double arc_mid(const Arc& arc, double L) { return arc.at(0.5 * arc.length, L); }

std::vector<Arc> partition_ring(int K, double L) {
  require_ring(L);
  if (K < 1) throw std::invalid_argument("partition_ring needs K >= 1");
  const double width = 2.0 * L / K;
  std::vector<Arc> arcs;
  arcs.reserve(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) {
    arcs.push_back(Arc{canonicalize(-L + k * width, L), width});
  }
  return arcs;
}

int locate_arc(const std::vector<Arc>& arcs, double x, double L) {
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (arcs[i].contains(x, L)) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace community_forge
