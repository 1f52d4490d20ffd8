#include "community_forge/report.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace community_forge {

void PropertyReport::add(std::string name, bool passed, double measured, double bound,
                         std::string detail) {
  checks.push_back(PropertyCheck{std::move(name), passed, measured, bound, std::move(detail)});
}

bool PropertyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const PropertyCheck& PropertyReport::at(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("no property check named '" + name + "'");
}

std::string PropertyReport::summary() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.passed ? "[ok]   " : "[FAIL] ") << c.name << " measured=" << c.measured
        << " bound=" << c.bound;
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << '\n';
  }
  return out.str();
}

}  // namespace community_forge
