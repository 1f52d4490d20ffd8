#pragma once

#include <vector>

namespace community_forge {

/// Wraps x into the half-open ring [-L, L). The seam is represented by -L.
double canonicalize(double x, double L);

/// Signed displacement from `from` to `to` along the shorter way, in [-L, L).
double signed_offset(double to, double from, double L);

/// Torus metric min(|x-y|, 2L - |x-y|). Throws std::invalid_argument on
/// non-finite input or L <= 0.
double torus_distance(double x, double y, double L);

/// Interval on the ring of circumference 2L, stored as (start, length) so that
/// arcs crossing the -L/L seam need no special casing.
struct Arc {
  double start = 0.0;
  double length = 0.0;

  /// Throws std::invalid_argument unless 0 < length <= 2L and start is finite.
  static Arc make(double start, double length, double L);

  /// Half-open membership [start, start + length), wrap-aware. A full-ring arc
  /// contains every point.
  bool contains(double x, double L) const;

  /// Offset of x from the arc start measured forward, in [0, 2L).
  double forward_offset(double x, double L) const;

  /// Canonical point at start + s.
  double at(double s, double L) const;

  Arc rotated(double shift, double L) const;
};

/// Point halfway along the arc, canonicalized. For a non-wrapping arc this is
/// the average (a + b) / 2 of its endpoints.
double arc_mid(const Arc& arc, double L);

/// K arcs of length 2L/K starting at -L + k * 2L/K. Throws for K == 0.
std::vector<Arc> partition_ring(int K, double L);

/// Index of the arc containing x under the half-open convention, or -1.
int locate_arc(const std::vector<Arc>& arcs, double x, double L);

}  // namespace community_forge
