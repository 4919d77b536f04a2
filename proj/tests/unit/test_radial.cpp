#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "ueq/hermite.hpp"
#include "ueq/radial.hpp"

using ueq::cx;
using namespace ueq::radial;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const double pi = std::numbers::pi;
}

TEST_CASE("unit sphere areas") {
  CHECK_THAT(sphere_area(1), WithinRel(2.0, 1e-15));
  CHECK_THAT(sphere_area(2), WithinRel(2.0 * pi, 1e-15));
  CHECK_THAT(sphere_area(3), WithinRel(4.0 * pi, 1e-15));
  CHECK_THAT(sphere_area(5), WithinRel(8.0 * pi * pi / 3.0, 1e-14));
  CHECK_THROWS_AS(sphere_area(0), std::invalid_argument);
}

TEST_CASE("midpoint radial quadrature integrates Gaussians in several dimensions") {
  // int_{R^n} e^{-|x|^2} dx = pi^{n/2}. For odd n the integrand is even in r and
  // the midpoint rule is exact to rounding; for n = 2 the leading error is
  // (h^2/24) f'(0) = pi h^2 / 12, and for n >= 4 it is O(h^4) or smaller.
  const double h = 30.0 / 6000;
  for (int n : {1, 2, 3, 4, 5, 8}) {
    const auto q = RadialQuadrature::midpoint(n, 30.0, 6000);
    const RadialState s(gaussian(), q);
    const auto f = s.values();
    const double value = inner(f, f).real();
    INFO("n = " << n);
    if (n % 2 == 1) {
      CHECK_THAT(value, WithinRel(std::pow(pi, n / 2.0), 1e-12));
    } else if (n == 2) {
      CHECK_THAT(value, WithinRel(pi * (1.0 + h * h / 12.0), 1e-9));
    } else {
      CHECK_THAT(value, WithinRel(std::pow(pi, n / 2.0), 1e-9));
    }
  }
}

TEST_CASE("log-midpoint quadrature integrates power laws") {
  // |S^2| int_1^10 r^{-3} r^2 dr = 4 pi log 10
  const auto q = RadialQuadrature::log_midpoint(3, 1.0, 10.0, 1000);
  const RadialState s(power(-1.5), q);
  const auto f = s.values();
  CHECK_THAT(inner(f, f).real(), WithinRel(4.0 * pi * std::log(10.0), 1e-13));
}

TEST_CASE("quadrature constructors validate their arguments") {
  CHECK_THROWS_AS(RadialQuadrature::midpoint(0, 1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(RadialQuadrature::midpoint(3, -1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(RadialQuadrature::log_midpoint(3, 2.0, 1.0, 10), std::invalid_argument);
}

TEST_CASE("radial fields on different quadratures do not mix") {
  const auto q1 = RadialQuadrature::midpoint(3, 10.0, 100);
  const auto q2 = RadialQuadrature::midpoint(3, 10.0, 100);
  const RadialState a(gaussian(), q1);
  const RadialState b(gaussian(), q2);
  CHECK_THROWS_AS(inner(a.values(), b.values()), ueq::ShapeMismatch);
  CHECK_THROWS_AS(RadialField(q1, std::vector<cx>(3)), ueq::ShapeMismatch);
}

TEST_CASE("profile derivatives agree with finite differences") {
  std::mt19937_64 rng(4);
  std::vector<RadialProfile> profiles{gaussian(), odd_gaussian(), power(-0.7), annulus_power(3, 20.0),
                                      gaussian_polynomial({1.0, cx(0.3, -0.2), 0.05}, 1.4),
                                      ueq::states::random_radial_profile(rng)};
  const double h = 1e-5;
  for (const auto& p : profiles) {
    for (double r : {0.3, 1.2, 2.0, 2.5, 7.0, 30.0}) {
      const cx fd = (p.value(r + h) - p.value(r - h)) / (2.0 * h);
      INFO(p.name << " at r = " << r);
      CHECK(std::abs(fd - p.derivative(r)) <= 1e-6 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST_CASE("smoothstep is C2 and monotone") {
  CHECK(smoothstep(-1.0) == 0.0);
  CHECK(smoothstep(2.0) == 1.0);
  CHECK_THAT(smoothstep(0.5), WithinAbs(0.5, 1e-15));
  CHECK(smoothstep_derivative(0.0) == 0.0);
  CHECK(smoothstep_derivative(1.0) == 0.0);
  for (double t = 0.0; t < 1.0; t += 0.05) CHECK(smoothstep_derivative(t) >= 0.0);
}

TEST_CASE("annulus profile is r^{-n/2} between e and R and vanishes outside [1, eR]") {
  const auto p = annulus_power(3, 50.0);
  CHECK(p.value(0.9) == cx(0.0));
  CHECK(p.value(50.0 * std::exp(1.0) + 1.0) == cx(0.0));
  CHECK_THAT(p.value(10.0).real(), WithinRel(std::pow(10.0, -1.5), 1e-14));
}

TEST_CASE("mass check accepts decaying profiles and rejects r^{-n/2}") {
  CHECK_THAT(checked_mass(gaussian(), 3), WithinRel(std::pow(pi, 1.5), 1e-8));
  CHECK_NOTHROW(checked_mass(annulus_power(3, 100.0), 3));
  CHECK_THROWS_AS(checked_mass(power(-1.5), 3), NotNormalizable);
  CHECK_THROWS_AS(checked_mass(power(-2.5), 5), NotNormalizable);
}
