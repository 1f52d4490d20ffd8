#include "community_forge/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace community_forge {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kValidationGrid = 1024;

double checked_distance(double d, double L) {
  if (!std::isfinite(d) || d < 0.0 || d > L * (1.0 + 1e-14)) {
    std::ostringstream msg;
    msg << "kernel distance " << d << " outside [0, " << L << "]";
    throw std::invalid_argument(msg.str());
  }
  return std::min(d, L);
}

bool compact(KernelFamily family) {
  return family == KernelFamily::quadratic_bump || family == KernelFamily::cosine_bump;
}

void check_support_edge(const KernelSpec& k, double d) {
  if (compact(k.family) && d == k.width) {
    throw KernelBoundaryError("derivative requested at the support edge of a bump kernel");
  }
}

}  // namespace

std::string_view to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::gaussian: return "gaussian";
    case KernelFamily::raised_cosine: return "raised_cosine";
    case KernelFamily::quadratic_bump: return "quadratic_bump";
    case KernelFamily::cosine_bump: return "cosine_bump";
    case KernelFamily::constant: return "constant";
  }
  return "unknown";
}

std::string_view to_string(KernelRole role) {
  switch (role) {
    case KernelRole::interest_f: return "interest_f";
    case KernelRole::ability_g: return "ability_g";
    case KernelRole::filter_h: return "filter_h";
  }
  return "unknown";
}

KernelFamily parse_kernel_family(std::string_view name) {
  for (auto f : {KernelFamily::gaussian, KernelFamily::raised_cosine, KernelFamily::quadratic_bump,
                 KernelFamily::cosine_bump, KernelFamily::constant}) {
    if (to_string(f) == name) return f;
  }
  throw std::invalid_argument("unknown kernel family '" + std::string(name) + "'");
}

KernelSpec KernelSpec::make(KernelFamily family, double amplitude, double width) {
  if (!std::isfinite(amplitude) || amplitude <= 0.0 || amplitude > 1.0) {
    throw std::invalid_argument("kernel amplitude must lie in (0, 1]");
  }
  if (!std::isfinite(width) || width <= 0.0) {
    throw std::invalid_argument("kernel width must be positive");
  }
  return KernelSpec{family, amplitude, width};
}

double support_radius(const KernelSpec& k, double L) {
  return compact(k.family) ? std::min(k.width, L) : L;
}

double kernel_eval(const KernelSpec& k, double d, double L) {
  d = checked_distance(d, L);
  const double a = k.amplitude;
  const double w = k.width;
  switch (k.family) {
    case KernelFamily::gaussian:
      return a * std::exp(-d * d / (2.0 * w * w));
    case KernelFamily::raised_cosine:
      return a * 0.5 * (1.0 + std::cos(kPi * d / L));
    case KernelFamily::quadratic_bump: {
      const double r = d / w;
      return r >= 1.0 ? 0.0 : a * (1.0 - r * r);
    }
    case KernelFamily::cosine_bump:
      return d >= w ? 0.0 : a * std::cos(kPi * d / (2.0 * w));
    case KernelFamily::constant:
      return a;
  }
  return 0.0;
}

double kernel_deriv(const KernelSpec& k, double d, double L) {
  d = checked_distance(d, L);
  check_support_edge(k, d);
  const double a = k.amplitude;
  const double w = k.width;
  switch (k.family) {
    case KernelFamily::gaussian:
      return -d / (w * w) * a * std::exp(-d * d / (2.0 * w * w));
    case KernelFamily::raised_cosine:
      return -a * 0.5 * (kPi / L) * std::sin(kPi * d / L);
    case KernelFamily::quadratic_bump:
      return d > w ? 0.0 : -2.0 * a * d / (w * w);
    case KernelFamily::cosine_bump:
      return d > w ? 0.0 : -a * (kPi / (2.0 * w)) * std::sin(kPi * d / (2.0 * w));
    case KernelFamily::constant:
      return 0.0;
  }
  return 0.0;
}

double kernel_second_deriv(const KernelSpec& k, double d, double L) {
  d = checked_distance(d, L);
  check_support_edge(k, d);
  const double a = k.amplitude;
  const double w = k.width;
  switch (k.family) {
    case KernelFamily::gaussian: {
      const double w2 = w * w;
      return (d * d / (w2 * w2) - 1.0 / w2) * a * std::exp(-d * d / (2.0 * w2));
    }
    case KernelFamily::raised_cosine:
      return -a * 0.5 * (kPi / L) * (kPi / L) * std::cos(kPi * d / L);
    case KernelFamily::quadratic_bump:
      return d > w ? 0.0 : -2.0 * a / (w * w);
    case KernelFamily::cosine_bump: {
      const double s = kPi / (2.0 * w);
      return d > w ? 0.0 : -a * s * s * std::cos(s * d);
    }
    case KernelFamily::constant:
      return 0.0;
  }
  return 0.0;
}

Kernel::Kernel(KernelSpec spec, double L) : spec_(spec), L_(L), radius_(support_radius(spec, L)) {
  if (!std::isfinite(L) || L <= 0.0) throw std::invalid_argument("L must be positive");
}

bool family_admissible(KernelFamily family, KernelRole role) {
  switch (role) {
    case KernelRole::interest_f:
      return family == KernelFamily::gaussian || family == KernelFamily::raised_cosine;
    case KernelRole::ability_g:
      return compact(family);
    case KernelRole::filter_h:
      return true;
  }
  return false;
}

ValidationReport validate_assumption1(const KernelSpec& k, KernelRole role, double L) {
  ValidationReport rep;
  rep.role = role;
  rep.family_admissible = family_admissible(k.family, role);
  if (!rep.family_admissible) {
    rep.messages.push_back(std::string(to_string(k.family)) + " is not admissible as " +
                           std::string(to_string(role)));
  }

  rep.range_ok = k.amplitude > 0.0 && k.amplitude <= 1.0 && k.width > 0.0;
  if (role == KernelRole::ability_g && k.amplitude >= 1.0) {
    rep.range_ok = false;
    rep.messages.push_back("ability kernel must map into [0, 1)");
  }

  const double span = role == KernelRole::ability_g ? support_radius(k, L) : L;
  const double step = span / (kValidationGrid - 1);
  auto note_failure = [&](double d, const std::string& what) {
    if (!rep.failing_d) rep.failing_d = d;
    rep.messages.push_back(what);
  };

  rep.monotone_ok = true;
  double prev = kernel_eval(k, 0.0, L);
  if (prev < 0.0 || prev > 1.0) rep.range_ok = false;
  for (int i = 1; i < kValidationGrid; ++i) {
    const double d = std::min(i * step, span);
    const double v = kernel_eval(k, d, L);
    if (v < 0.0 || v > 1.0) rep.range_ok = false;
    const bool ok = role == KernelRole::filter_h ? v <= prev : v < prev;
    if (!ok && rep.monotone_ok) {
      rep.monotone_ok = false;
      std::ostringstream msg;
      msg << "not " << (role == KernelRole::filter_h ? "nonincreasing" : "strictly decreasing")
          << " at d=" << d;
      note_failure(d, msg.str());
    }
    prev = v;
  }

  if (role == KernelRole::ability_g) {
    for (int i = 1; i + 1 < kValidationGrid; ++i) {
      const double d = i * step;
      if (compact(k.family) && d >= k.width) break;
      if (kernel_second_deriv(k, d, L) > 1e-12) {
        rep.concave_ok = false;
        std::ostringstream msg;
        msg << "convex at d=" << d;
        note_failure(d, msg.str());
        break;
      }
    }
  }
  return rep;
}

}  // namespace community_forge
