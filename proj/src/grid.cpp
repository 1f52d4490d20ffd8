#include "community_forge/grid.hpp"

#include <algorithm>
#include <stdexcept>

namespace community_forge {

double GridFunction::span() const {
  if (values.empty()) return 0.0;
  return periodic ? step * static_cast<double>(values.size())
                  : step * static_cast<double>(values.size() - 1);
}

std::size_t GridFunction::argmax() const {
  if (values.empty()) throw std::logic_error("argmax of empty grid");
  return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
}

double GridFunction::max() const { return values[argmax()]; }

GridFunction ring_grid(std::size_t n, double L) {
  if (n == 0) throw std::invalid_argument("ring grid needs at least one sample");
  return GridFunction{-L, 2.0 * L / static_cast<double>(n), true, std::vector<double>(n, 0.0)};
}

GridFunction interval_grid(double start, double length, std::size_t n) {
  if (n < 2) throw std::invalid_argument("interval grid needs at least two samples");
  return GridFunction{start, length / static_cast<double>(n - 1), false, std::vector<double>(n, 0.0)};
}

}  // namespace community_forge
