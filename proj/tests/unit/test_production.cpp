#include <doctest.h>

#include <cmath>
#include <random>

#include "community_forge/production.hpp"
#include "fixtures.hpp"
#include "golden.hpp"
#include "oracles.hpp"

using namespace community_forge;

namespace {

const auto kP = fixtures::canonical_params();
const Arc kArc = Arc::make(-0.1, 0.2, 1.0);

DemandProfile profile(const Arc& a) { return demand_profile(a, kP.E_p, kP.f, 512, kP.L); }

}  // namespace

TEST_CASE("best content type matches frozen oracle values") {
  const auto prof = profile(kArc);
  const auto t = best_content_type(-0.08, prof, kP.g);
  CHECK(t.x_star == doctest::Approx(golden::x_star_m0p08).epsilon(1e-12));
  CHECK(t.objective == doctest::Approx(golden::objective_m0p08).epsilon(1e-12));
  CHECK(best_content_type(0.03, prof, kP.g).x_star == doctest::Approx(golden::x_star_0p03).epsilon(1e-12));
  CHECK(best_content_type(0.0, prof, kP.g).x_star == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("best content type agrees with brute force within one cell") {
  const Arc a = Arc::make(0.8, 0.5, 1.0);
  const auto prof = profile(a);
  const auto oc = fixtures::oracle_view(a, kP);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, a.length);
  for (int i = 0; i < 10; ++i) {
    const double y = oc.start + u(rng);
    const double lib = best_content_type(canonicalize(y, 1.0), prof, kP.g).x_star;
    CHECK(oracle::dist(lib, oracle::brute_argmax(oc, y), 1.0) <= oracle::brute_cell(oc));
    CHECK(oracle::dist(lib, oracle::best_type(oc, y), 1.0) < 1e-9);
  }
}

TEST_CASE("production gate opens iff the objective covers alpha c") {
  ProductionTarget t;
  t.objective = 0.5;
  CHECK(production_gate(t, 0.25, 1.0, 2.0).gate_rate == 2.0);
  CHECK(production_gate(t, 0.25, 2.0, 2.0).gate_rate == 2.0);
  CHECK(production_gate(t, 0.25, 2.1, 2.0).gate_rate == 0.0);
}

TEST_CASE("production map shape") {
  for (const Arc& a : {kArc, Arc::make(0.85, 0.3, 1.0), Arc::make(-0.5, 1.0, 1.0)}) {
    const auto prof = profile(a);
    const auto map = production_map(prof, kP.g, 1.0, kP.E_p * a.length, kP.c, 256);
    REQUIRE(map.targets.size() == 256);
    const auto rep = production_map_check(map);
    CHECK_MESSAGE(rep.passed(), rep.summary());
    CHECK(map.production_feasible());
  }
}

TEST_CASE("image endpoints match the oracle") {
  const auto map = production_map(profile(kArc), kP.g, 1.0, 0.2, kP.c, 256);
  const Arc img = map.image();
  CHECK(img.start == doctest::Approx(golden::image_left).epsilon(1e-11));
  CHECK(img.start + img.length == doctest::Approx(golden::image_right).epsilon(1e-11));
}

TEST_CASE("producers never shift by the full ability width") {
  // Arc longer than twice the ability width: q vanishes at the width, so the
  // optimum lies strictly inside it.
  const Arc a = Arc::make(-0.6, 1.2, 1.0);
  const auto map = production_map(profile(a), kP.g, 1.0, 1.2, kP.c, 256);
  for (const auto& t : map.targets) CHECK(std::fabs(t.x_offset - t.y_offset) < kP.g.width);
}

TEST_CASE("production map rejects small grids") {
  CHECK_THROWS_AS(production_map(profile(kArc), kP.g, 1.0, 0.2, kP.c, 64), std::invalid_argument);
}
