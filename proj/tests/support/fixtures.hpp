#pragma once

// Parameter sets shared by the unit and acceptance suites.

#include <string>
#include <vector>

#include "community_forge/equilibrium.hpp"
#include "oracles.hpp"

namespace fixtures {

using namespace community_forge;

inline GlobalParams canonical_params(double c = 0.05) {
  GlobalParams p;
  p.L = 1.0;
  p.c = c;
  p.E_p = 1.0;
  p.E_q = 1.0;
  p.f = KernelSpec::make(KernelFamily::gaussian, 1.0, 0.3);
  p.g = KernelSpec::make(KernelFamily::quadratic_bump, 0.9, 0.25);
  p.validate();
  return p;
}

struct MatrixConfig {
  std::string name;
  GlobalParams params;
};

/// Interest family x ability family x ability width: 2 x 2 x 3 = 12 configs.
/// The arc of each is whatever the covering construction picks.
inline std::vector<MatrixConfig> config_matrix() {
  std::vector<MatrixConfig> out;
  const KernelSpec fs[] = {KernelSpec::make(KernelFamily::gaussian, 1.0, 0.3),
                           KernelSpec::make(KernelFamily::raised_cosine, 1.0, 1.0)};
  const KernelFamily gs[] = {KernelFamily::quadratic_bump, KernelFamily::cosine_bump};
  const double widths[] = {0.1, 0.25, 0.4};
  for (const auto& f : fs) {
    for (auto gf : gs) {
      for (double w : widths) {
        GlobalParams p = canonical_params();
        p.f = f;
        p.g = KernelSpec::make(gf, 0.9, w);
        p.validate();
        out.push_back({std::string(to_string(f.family)) + "/" + std::string(to_string(gf)) + "/w=" +
                           std::to_string(w).substr(0, 4),
                       p});
      }
    }
  }
  return out;
}

/// Oracle view of a community.
inline oracle::Community oracle_view(const Arc& arc, const GlobalParams& p) {
  return oracle::Community{arc.start, arc.length, p.L, p.E_p, p.E_q, p.c, p.f, p.g};
}

/// Community on an arc centred at `mid`.
inline CommunityState centred_community(double mid, double length, const GlobalParams& p,
                                        const NumericsConfig& n = {}) {
  return build_community(Arc::make(mid - 0.5 * length, length, p.L), p, n);
}

}  // namespace fixtures
