#pragma once

#include <cstddef>
#include <vector>

namespace community_forge {

/// Uniform samples of a real function, either around the whole ring
/// (periodic, n cells of width 2L/n starting at -L) or across a closed
/// interval with both endpoints sampled.
struct GridFunction {
  double origin = 0.0;
  double step = 0.0;
  bool periodic = false;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  /// Abscissa of sample i; not canonicalized for interval grids.
  double coord(std::size_t i) const { return origin + step * static_cast<double>(i); }
  /// Covered length: n*step for periodic grids, (n-1)*step otherwise.
  double span() const;
  std::size_t argmax() const;
  double max() const;
};

GridFunction ring_grid(std::size_t n, double L);
GridFunction interval_grid(double start, double length, std::size_t n);

}  // namespace community_forge
