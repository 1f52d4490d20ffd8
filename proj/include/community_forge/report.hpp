#pragma once

#include <string>
#include <vector>

namespace community_forge {

/// One named numeric check: the measured quantity, the bound it was held to,
/// and whether it passed.
struct PropertyCheck {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double bound = 0.0;
  std::string detail;
};

struct PropertyReport {
  std::vector<PropertyCheck> checks;

  void add(std::string name, bool passed, double measured = 0.0, double bound = 0.0,
           std::string detail = {});
  bool passed() const;
  /// Throws std::out_of_range if no check has that name.
  const PropertyCheck& at(const std::string& name) const;
  std::string summary() const;
};

}  // namespace community_forge
