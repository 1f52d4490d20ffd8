#include <doctest.h>

#include <cmath>
#include <random>

#include "community_forge/demand.hpp"
#include "fixtures.hpp"
#include "golden.hpp"
#include "oracles.hpp"

using namespace community_forge;

namespace {

const KernelSpec kF = KernelSpec::make(KernelFamily::gaussian, 1.0, 0.3);
const KernelSpec kRC = KernelSpec::make(KernelFamily::raised_cosine, 1.0, 1.0);
const Arc kArc = Arc::make(-0.1, 0.2, 1.0);

}  // namespace

TEST_CASE("demand matches frozen closed-form values") {
  CHECK(demand_at(kArc, 1.0, kF, 0.0, 1.0) == doctest::Approx(golden::demand_at_mid).epsilon(1e-13));
  CHECK(demand_at(kArc, 1.0, kF, 0.5, 1.0) == doctest::Approx(golden::demand_at_0p5).epsilon(1e-13));
  CHECK(demand_at(kArc, 1.0, kF, -1.0, 1.0) == doctest::Approx(golden::demand_at_antipode).epsilon(1e-12));
  const Arc seam = Arc::make(0.9, 0.4, 1.0);
  CHECK(demand_at(seam, 1.0, kRC, -0.95, 1.0) == doctest::Approx(golden::raised_cosine_demand_seam).epsilon(1e-13));
  CHECK(demand_at(seam, 1.0, kRC, 0.0, 1.0) == doctest::Approx(golden::raised_cosine_demand_far).epsilon(1e-12));
}

TEST_CASE("quadrature, erf path and midpoint oracle agree") {
  const auto p = fixtures::canonical_params();
  const Arc arcs[] = {kArc, Arc::make(0.7, 0.6, 1.0), Arc::make(-0.5, 1.3, 1.0)};
  for (const auto& a : arcs) {
    const auto oc = fixtures::oracle_view(a, p);
    for (double x : {-0.99, -0.4, 0.0, 0.35, 0.9}) {
      const double q = demand_at(a, 1.0, kF, x, 1.0);
      CHECK(q == doctest::Approx(demand_at_closed_form(a, 1.0, kF, x, 1.0)).epsilon(1e-13));
      CHECK(q == doctest::Approx(oracle::demand_midpoint(oc, x, 100000)).epsilon(1e-9));
    }
  }
}

TEST_CASE("demand is invariant under joint rotation") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const double shift = u(rng), x = u(rng);
    const Arc a = Arc::make(-0.2, 0.45, 1.0);
    CHECK(demand_at(a.rotated(shift, 1.0), 1.0, kF, canonicalize(x + shift, 1.0), 1.0) ==
          doctest::Approx(demand_at(a, 1.0, kF, x, 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("demand is linear in the consumption rate") {
  CHECK(demand_at(kArc, 0.37, kF, 0.2, 1.0) == doctest::Approx(0.37 * demand_at(kArc, 1.0, kF, 0.2, 1.0)).epsilon(1e-14));
}

TEST_CASE("demand slope matches finite differences") {
  const Arc a = Arc::make(0.6, 0.7, 1.0);
  const double h = 1e-6;
  for (double x : {-0.9, -0.3, 0.1, 0.62, 0.95}) {
    const double fd = (demand_at(a, 1.0, kF, x + h, 1.0) - demand_at(a, 1.0, kF, x - h, 1.0)) / (2 * h);
    CHECK(demand_slope(a, 1.0, kF, x, 1.0) == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("full-ring community has flat demand") {
  const Arc full = Arc::make(-1.0, 2.0, 1.0);
  const double d0 = demand_at(full, 1.0, kF, 0.0, 1.0);
  for (double x : {-0.7, 0.3, 0.99}) CHECK(demand_at(full, 1.0, kF, x, 1.0) == doctest::Approx(d0).epsilon(1e-13));
  CHECK(demand_slope(full, 1.0, kF, 0.4, 1.0) == 0.0);
}

TEST_CASE("demand profile properties hold for seam-crossing arcs") {
  for (const auto& f : {kF, kRC}) {
    const auto prof = demand_profile(Arc::make(0.85, 0.3, 1.0), 1.0, f, 512, 1.0);
    const auto rep = demand_properties_check(prof);
    CHECK_MESSAGE(rep.passed(), rep.summary());
    CHECK(rep.at("symmetry").measured < 1e-10);
  }
}

TEST_CASE("demand profile input validation") {
  CHECK_THROWS_AS(demand_profile(kArc, 1.0, kF, 32, 1.0), std::invalid_argument);
  const auto bump = KernelSpec::make(KernelFamily::quadratic_bump, 0.9, 0.25);
  CHECK_THROWS_AS(demand_at(kArc, 1.0, bump, 0.0, 1.0), KernelValidationError);
  CHECK_NOTHROW(demand_at(kArc, 1.0, bump, 0.0, 1.0, 64, KernelCheck::skip));
}
