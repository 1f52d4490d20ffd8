#include <doctest.h>

#include <cmath>

#include "community_forge/filtering.hpp"
#include "fixtures.hpp"
#include "golden.hpp"
#include "oracles.hpp"

using namespace community_forge;

namespace {

const auto kP = fixtures::canonical_params();
const KernelSpec kH = KernelSpec::make(KernelFamily::gaussian, 1.0, 0.2);

}  // namespace

TEST_CASE("kernel-filtered totals match the oracle") {
  const auto c = fixtures::centred_community(0.0, 0.2, kP);
  CHECK(filtered_total_utility(c, FilterSpec::kernel(kH, 0.0), kP) ==
        doctest::Approx(golden::filtered_total_h0p2_mid).epsilon(1e-5));
  CHECK(filtered_total_utility(c, FilterSpec::kernel(kH, 0.05), kP) ==
        doctest::Approx(golden::filtered_total_h0p2_0p05).epsilon(1e-5));
}

TEST_CASE("pass-all and block-all bracket the filtered totals") {
  const auto c = fixtures::centred_community(0.3, 0.2, kP);
  CHECK(filtered_total_utility(c, FilterSpec::pass_all(), kP) ==
        doctest::Approx(c.utility.total_formula).epsilon(1e-12));
  CHECK(filtered_total_utility(c, FilterSpec::block_all(kP.f, 1.0, 0.3), kP) == 0.0);
}

TEST_CASE("threshold radius inverts the interest kernel") {
  CHECK(threshold_radius(kP.f, 1.0, 1.0) == 0.0);
  CHECK(threshold_radius(kP.f, 0.0, 1.0) == 1.0);
  const double r = threshold_radius(kP.f, 0.5, 1.0);
  CHECK(oracle::kernel(kP.f, r, 1.0) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK_THROWS_AS(FilterSpec::threshold_at(-0.1, 0.0), std::invalid_argument);
}

TEST_CASE("threshold filter passes strictly above t") {
  const auto f = FilterSpec::threshold_at(0.5, 0.0);
  const double r = threshold_radius(kP.f, 0.5, 1.0);
  CHECK(f.pass(0.9 * r, kP.f, 1.0) == 1.0);
  CHECK(f.pass(1.1 * r, kP.f, 1.0) == 0.0);
}

TEST_CASE("central threshold filter keeps the full total") {
  const auto s = construct_covering(kP, NumericsConfig{});
  for (const auto& c : {s.communities[0], s.communities[16]}) {
    const auto f = make_threshold_filter(c, kP);
    CHECK(f.threshold > 0.0);
    const double all = filtered_total_utility(c, FilterSpec::pass_all(), kP);
    CHECK(filtered_total_utility(c, f, kP) == doctest::Approx(all).epsilon(1e-6));
    // A stricter threshold loses content.
    CHECK(filtered_total_utility(c, FilterSpec::threshold_at(f.threshold * 1.0005, f.center), kP) < all);
  }
}

TEST_CASE("best filter agent sits at the midpoint") {
  const auto c = fixtures::centred_community(0.55, 0.2, kP);
  for (double w : {0.02, 0.2, 1.0}) {
    const auto r = optimal_filter_agent(c, KernelSpec::make(KernelFamily::gaussian, 1.0, w), kP, 257);
    CHECK(std::fabs(r.agent_offset) <= 0.2 / 256);
    CHECK(r.totals.size() % 2 == 1);
  }
  // A constant filter makes every agent tie; the midpoint wins the tie.
  const auto flat = optimal_filter_agent(c, KernelSpec::make(KernelFamily::constant, 1.0, 1.0), kP, 256);
  CHECK(flat.agent_offset == 0.0);
}

TEST_CASE("expert gains match the oracle") {
  auto p = fixtures::canonical_params(0.3);
  p.f = KernelSpec::make(KernelFamily::gaussian, 0.95, 0.3);
  const auto c = fixtures::centred_community(0.0, 0.2, p);
  const auto& ts = c.production.targets;
  CHECK(expert_benefit(ts.front(), c, p).gain == doctest::Approx(golden::expert_gain_m0p1).epsilon(1e-8));
  const auto mid = best_content_type_at_offset(0.0, c.demand, p.g);
  CHECK(expert_benefit(mid, c, p).gain == doctest::Approx(golden::expert_gain_0).epsilon(1e-8));
}

TEST_CASE("expert gain with a unit interest peak is alpha c (1 - q)") {
  const auto c = fixtures::centred_community(0.0, 0.2, kP);
  for (const auto& t : c.production.targets) {
    const auto g = expert_benefit(t, c, kP);
    CHECK(g.gain == doctest::Approx(kP.E_q * c.alpha * kP.c * (1.0 - g.q)).epsilon(1e-14));
  }
}

TEST_CASE("free reading means nobody routes through an expert") {
  auto p = fixtures::canonical_params(0.0);
  p.f = KernelSpec::make(KernelFamily::gaussian, 0.95, 0.3);
  const auto plan = expert_routing_plan(fixtures::centred_community(0.0, 0.2, p), p);
  CHECK(plan.benefiting.empty());
  CHECK_FALSE(plan.t_C);
  CHECK(plan.delta_total == 0.0);
}

TEST_CASE("benefiting set grows with cost and keeps its threshold shape") {
  auto p = fixtures::canonical_params();
  p.f = KernelSpec::make(KernelFamily::gaussian, 0.95, 0.3);
  std::size_t prev = 0;
  for (int k = 0; k <= 10; ++k) {
    p.c = 0.25 + 0.01 * k;
    const auto s = construct_covering(p, NumericsConfig{});
    const auto plan = expert_routing_plan(s.communities.front(), p);
    CHECK(plan.benefiting.size() >= prev);
    CHECK(plan.threshold_violations == 0);
    CHECK(plan.delta_total >= 0.0);
    if (!plan.benefiting.empty()) {
      CHECK(plan.delta_total > 0.0);
      REQUIRE(plan.t_C);
      for (auto i : plan.benefiting) CHECK(plan.gains[i].P <= *plan.t_C);
    }
    prev = plan.benefiting.size();
  }
}
