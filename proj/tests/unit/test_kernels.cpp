#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "community_forge/kernels.hpp"
#include "oracles.hpp"

using namespace community_forge;

namespace {

const KernelSpec kAll[] = {
    KernelSpec::make(KernelFamily::gaussian, 1.0, 0.3),
    KernelSpec::make(KernelFamily::raised_cosine, 0.8, 1.0),
    KernelSpec::make(KernelFamily::quadratic_bump, 0.9, 0.25),
    KernelSpec::make(KernelFamily::cosine_bump, 0.9, 0.4),
};

}  // namespace

TEST_CASE("kernel values match the family formulas") {
  for (const auto& k : kAll) {
    for (int i = 0; i <= 200; ++i) {
      const double d = i / 200.0;
      CHECK(kernel_eval(k, d, 1.0) == doctest::Approx(oracle::kernel(k, d, 1.0)).epsilon(1e-14));
    }
    CHECK(kernel_eval(k, 0.0, 1.0) == k.amplitude);
  }
}

TEST_CASE("bump kernels vanish at and beyond their width") {
  const auto q = kAll[2];
  CHECK(kernel_eval(q, 0.25, 1.0) == 0.0);
  CHECK(kernel_eval(q, 0.6, 1.0) == 0.0);
  CHECK(support_radius(q, 1.0) == 0.25);
  CHECK(support_radius(kAll[0], 1.0) == 1.0);
}

TEST_CASE("analytic derivatives agree with finite differences") {
  const double h = 1e-6;
  for (const auto& k : kAll) {
    for (int i = 1; i < 40; ++i) {
      const double d = i / 40.0 * std::min(k.width, 1.0) * 0.97;
      const double fd = (kernel_eval(k, d + h, 1.0) - kernel_eval(k, d - h, 1.0)) / (2 * h);
      CHECK(kernel_deriv(k, d, 1.0) == doctest::Approx(fd).epsilon(1e-6));
      const double fd2 = (kernel_deriv(k, d + h, 1.0) - kernel_deriv(k, d - h, 1.0)) / (2 * h);
      CHECK(kernel_second_deriv(k, d, 1.0) == doctest::Approx(fd2).epsilon(1e-5).scale(1.0));
    }
  }
}

TEST_CASE("derivative at a bump edge throws") {
  CHECK_THROWS_AS(kernel_deriv(kAll[2], 0.25, 1.0), KernelBoundaryError);
  CHECK(kernel_deriv(kAll[2], 0.3, 1.0) == 0.0);
}

TEST_CASE("kernel input validation") {
  CHECK_THROWS_AS(KernelSpec::make(KernelFamily::gaussian, 0.0, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(KernelSpec::make(KernelFamily::gaussian, 1.1, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(KernelSpec::make(KernelFamily::gaussian, 1.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(kernel_eval(kAll[0], -0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(kernel_eval(kAll[0], 1.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(parse_kernel_family("triangle"), std::invalid_argument);
  CHECK(parse_kernel_family("cosine_bump") == KernelFamily::cosine_bump);
}

TEST_CASE("role validation") {
  CHECK(validate_assumption1(kAll[0], KernelRole::interest_f, 1.0).passed());
  CHECK(validate_assumption1(kAll[1], KernelRole::interest_f, 1.0).passed());
  CHECK(validate_assumption1(kAll[2], KernelRole::ability_g, 1.0).passed());
  CHECK(validate_assumption1(kAll[3], KernelRole::ability_g, 1.0).passed());
  // Ability needs compact support and a peak below one.
  CHECK_FALSE(validate_assumption1(kAll[0], KernelRole::ability_g, 1.0).passed());
  CHECK_FALSE(validate_assumption1(KernelSpec::make(KernelFamily::quadratic_bump, 1.0, 0.25),
                                   KernelRole::ability_g, 1.0).passed());
  // Interest needs full support.
  CHECK_FALSE(validate_assumption1(kAll[2], KernelRole::interest_f, 1.0).passed());
  const auto constant = KernelSpec::make(KernelFamily::constant, 1.0, 1.0);
  CHECK(validate_assumption1(constant, KernelRole::filter_h, 1.0).passed());
  CHECK_FALSE(validate_assumption1(constant, KernelRole::interest_f, 1.0).passed());
}

TEST_CASE("ability kernels are concave inside their support") {
  for (const auto& k : {kAll[2], kAll[3]}) {
    for (int i = 1; i < 100; ++i) CHECK(kernel_second_deriv(k, i / 100.0 * k.width, 1.0) < 0.0);
  }
}
