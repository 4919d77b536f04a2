#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "ueq/gaussian_states.hpp"
#include "ueq/hermite.hpp"
#include "ueq/operators.hpp"

using ueq::cx;
using ueq::grid::GridSpec;
using namespace ueq::states;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

GridSpec make(int n, int N, double L) {
  GridSpec g;
  g.dim = n;
  g.points = N;
  g.half_width = L;
  return g;
}

double sq(const ueq::grid::VectorField& v) { return inner(v, v).real(); }

}  // namespace

TEST_CASE("coherent state closed form") {
  const auto spec = GaussianSpec::coherent(1);
  const double x[] = {0.7};
  CHECK_THAT(std::abs(evaluate(spec, x) - cx(std::pow(std::numbers::pi, -0.25) * std::exp(-0.245))),
             WithinAbs(0.0, 1e-15));
  const auto phi = realize(spec, make(1, 256, 12.0));
  CHECK_THAT(inner(phi, phi).real(), WithinRel(1.0, 1e-12));
}

TEST_CASE("global phase leaves the modulus unchanged") {
  const auto g = make(1, 128, 10.0);
  const auto a = realize(GaussianSpec::coherent(1), g);
  const auto b = realize(GaussianSpec::coherent(1, 1.0, std::numbers::pi / 3.0), g);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK_THAT(std::abs(b[i]), WithinAbs(std::abs(a[i]), 1e-15));
    if (std::abs(a[i]) > 1e-200) CHECK_THAT(std::arg(b[i] / a[i]), WithinAbs(std::numbers::pi / 3.0, 1e-12));
  }
}

TEST_CASE("exact moments: hand values") {
  const auto c = exact_moments(GaussianSpec::coherent(1));
  CHECK_THAT(c.x_norm_sq, WithinRel(0.5, 1e-15));
  CHECK_THAT(c.grad_norm_sq, WithinRel(0.5, 1e-15));
  const auto s = exact_moments(GaussianSpec::squeezed(1, 4.0));
  CHECK_THAT(s.x_norm_sq, WithinRel(0.125, 1e-15));
  CHECK_THAT(s.grad_norm_sq, WithinRel(2.0, 1e-15));
  CHECK_THAT(std::sqrt(s.x_norm_sq * s.grad_norm_sq), WithinRel(0.5, 1e-15));
  for (const auto& spec : {GaussianSpec::squeezed(3, 2.0, 1.7), GaussianSpec::coherent(2, 0.4),
                           GaussianSpec::squeezed_gen(2, 1.5, std::polar(1.0, 2.5), 2.0)}) {
    const auto m = exact_moments(spec);
    CHECK_THAT(m.inner_x_grad.real(), WithinRel(-spec.n / 2.0 * spec.norm * spec.norm, 1e-14));
  }
}

TEST_CASE("grid moments match the closed forms") {
  const auto g1 = make(1, 256, 12.0);
  const auto g2 = make(2, 256, 12.0);
  for (const auto& spec : {GaussianSpec::coherent(1), GaussianSpec::squeezed(1, 4.0, 1.5, 0.3),
                           GaussianSpec::squeezed_gen(1, 2.0, std::polar(1.0, 0.75 * std::numbers::pi)),
                           GaussianSpec::squeezed(2, 0.5, 0.8), GaussianSpec::squeezed_gen(2, 1.2, std::polar(1.0, 2.0))}) {
    const auto& g = spec.n == 1 ? g1 : g2;
    const auto phi = realize(spec, g);
    const auto m = exact_moments(spec);
    const auto x = ueq::grid::position(phi);
    const auto d = ueq::grid::gradient(phi);
    INFO(to_string(spec.kind) << " n=" << spec.n << " lambda=" << spec.lambda);
    CHECK_THAT(inner(phi, phi).real(), WithinRel(m.norm_sq, 1e-8));
    CHECK_THAT(sq(x), WithinRel(m.x_norm_sq, 1e-6));
    CHECK_THAT(sq(d), WithinRel(m.grad_norm_sq, 1e-6));
    CHECK(std::abs(inner(x, d) - m.inner_x_grad) <= 1e-6 * std::abs(m.inner_x_grad));
  }
}

TEST_CASE("squeezed state has the requested momentum-to-position ratio") {
  const auto phi = realize(GaussianSpec::squeezed(1, 4.0), make(1, 256, 12.0));
  CHECK_THAT(std::sqrt(sq(ueq::grid::gradient(phi)) / sq(ueq::grid::position(phi))), WithinRel(4.0, 1e-10));
}

TEST_CASE("Gaussian parameter invariants") {
  CHECK_THROWS_AS(GaussianSpec::squeezed(1, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(GaussianSpec::coherent(0), std::invalid_argument);
  CHECK_THROWS_AS(GaussianSpec::squeezed_gen(1, 1.0, cx(0.0, 1.0)), std::invalid_argument);
  CHECK_THROWS_AS(GaussianSpec::squeezed_gen(1, 1.0, cx(-2.0, 0.0)), std::invalid_argument);
  GaussianSpec bad = GaussianSpec::coherent(1);
  bad.lambda = 2.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_THROWS_AS(parse_kind("thermal"), std::invalid_argument);
}

TEST_CASE("realize rejects small boxes and coarse grids with an estimate") {
  try {
    (void)realize(GaussianSpec::coherent(1), make(1, 64, 3.0));
    FAIL("expected rejection");
  } catch (const std::invalid_argument& e) {
    CHECK_THAT(std::string(e.what()), Catch::Matchers::ContainsSubstring("boundary mass"));
  }
  CHECK_THROWS_AS(realize(GaussianSpec::squeezed(1, 40.0), make(1, 32, 12.0)), std::invalid_argument);
  CHECK_THROWS_AS(realize(GaussianSpec::coherent(2), make(1, 64, 12.0)), std::invalid_argument);
  CHECK(boundary_mass_estimate(GaussianSpec::coherent(1), 5.0) == std::exp(-25.0));
}

TEST_CASE("Gaussian parameter JSON round trip") {
  const auto spec = GaussianSpec::squeezed_gen(2, 1.5, std::polar(1.0, 2.4), 0.7, 0.2);
  const auto back = gaussian_from_json(to_json(spec));
  CHECK(back.kind == spec.kind);
  CHECK(back.n == 2);
  CHECK(back.lambda == 1.5);
  CHECK(back.norm == 0.7);
  CHECK(back.theta == 0.2);
  CHECK(back.sgn_factor == spec.sgn_factor);
  CHECK_THROWS(gaussian_from_json(nlohmann::json{{"kind", "squeezed_gen"}, {"sgn_factor", {0.0, 1.0}}}));
}

TEST_CASE("Hermite functions are orthonormal") {
  // Gauss-free check: grid quadrature of h_j h_k on a wide box.
  const auto g = make(1, 512, 16.0);
  std::vector<std::vector<double>> h(g.points);
  for (int i = 0; i < g.points; ++i) h[i] = hermite_functions(10, g.coordinate(i));
  for (int j = 0; j <= 10; ++j) {
    for (int k = 0; k <= j; ++k) {
      double s = 0.0;
      for (int i = 0; i < g.points; ++i) s += h[i][j] * h[i][k] * g.spacing();
      CHECK_THAT(s, WithinAbs(j == k ? 1.0 : 0.0, 1e-12));
    }
  }
  CHECK_THAT(hermite_functions(0, 0.0)[0], WithinRel(std::pow(std::numbers::pi, -0.25), 1e-15));
}

TEST_CASE("random smooth states are reproducible and decay at the box edge") {
  const auto g = make(2, 64, 10.0);
  std::mt19937_64 a(12), b(12);
  const auto u = random_smooth_state(g, a);
  const auto v = random_smooth_state(g, b);
  CHECK(inner(u - v, u - v).real() == 0.0);
  CHECK(std::abs(u[0]) < 1e-12 * std::sqrt(inner(u, u).real()));
}
