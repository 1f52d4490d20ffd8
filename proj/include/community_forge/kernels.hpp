#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace community_forge {

/// Shape families for the interest (f), ability (g) and filter (h) kernels.
///
/// gaussian and raised_cosine have full support on [0, L] and serve as
/// interest kernels; quadratic_bump and cosine_bump have compact support
/// [0, width] and serve as ability kernels. `constant` is admissible only as a
/// filter and exists so that the all-pass filter and degenerate profiles can
/// be expressed with the same machinery.
enum class KernelFamily { gaussian, raised_cosine, quadratic_bump, cosine_bump, constant };

enum class KernelRole { interest_f, ability_g, filter_h };

std::string_view to_string(KernelFamily family);
std::string_view to_string(KernelRole role);
/// Throws std::invalid_argument for unknown names.
KernelFamily parse_kernel_family(std::string_view name);

struct KernelSpec {
  KernelFamily family = KernelFamily::gaussian;
  double amplitude = 1.0;
  double width = 1.0;

  /// Throws std::invalid_argument unless amplitude is in (0, 1] and width > 0.
  static KernelSpec make(KernelFamily family, double amplitude, double width);

  bool operator==(const KernelSpec&) const = default;
};

/// Raised when a derivative is requested exactly at the support edge of a
/// compactly supported family; only one-sided derivatives exist there.
class KernelBoundaryError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Distance beyond which the kernel vanishes (L for full-support families).
double support_radius(const KernelSpec& k, double L);

/// Kernel value at distance d in [0, L]; throws std::invalid_argument outside.
double kernel_eval(const KernelSpec& k, double d, double L);
double kernel_deriv(const KernelSpec& k, double d, double L);
double kernel_second_deriv(const KernelSpec& k, double d, double L);

/// A kernel bound to a ring, the form every model module consumes.
class Kernel {
 public:
  Kernel(KernelSpec spec, double L);

  double operator()(double d) const { return kernel_eval(spec_, d, L_); }
  double deriv(double d) const { return kernel_deriv(spec_, d, L_); }
  double second_deriv(double d) const { return kernel_second_deriv(spec_, d, L_); }
  double radius() const { return radius_; }
  double peak() const { return spec_.amplitude; }
  const KernelSpec& spec() const { return spec_; }
  double half_length() const { return L_; }

 private:
  KernelSpec spec_;
  double L_;
  double radius_;
};

struct ValidationReport {
  KernelRole role = KernelRole::interest_f;
  bool family_admissible = false;
  bool range_ok = false;
  bool monotone_ok = false;
  bool concave_ok = true;
  /// First grid distance at which a numeric check failed.
  std::optional<double> failing_d;
  std::vector<std::string> messages;

  bool passed() const { return family_admissible && range_ok && monotone_ok && concave_ok; }
};

/// Checks the shape requirements a kernel must meet for a given role, both per
/// family and numerically on a 1024-point grid. Never throws on failure.
///
/// interest_f: strictly decreasing on [0, L], range within [0, 1].
/// ability_g:  strictly decreasing and concave on (0, radius), amplitude < 1.
/// filter_h:   nonincreasing on [0, L], range within [0, 1].
ValidationReport validate_assumption1(const KernelSpec& k, KernelRole role, double L);

/// Cheap per-family admissibility test used on hot paths.
bool family_admissible(KernelFamily family, KernelRole role);

}  // namespace community_forge
