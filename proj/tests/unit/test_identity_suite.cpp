#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "ueq/gaussian_states.hpp"
#include "ueq/hermite.hpp"
#include "ueq/identity_suite.hpp"
#include "ueq/operators.hpp"

using ueq::cx;
using ueq::find_report;
using ueq::grid::GridSpec;
using ueq::grid::StateField;
using namespace ueq::identities;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const double pi = std::numbers::pi;

GridSpec make(int n, int N, double L, ueq::grid::Scheme s = ueq::grid::Scheme::spectral_periodic) {
  GridSpec g;
  g.dim = n;
  g.points = N;
  g.half_width = L;
  g.scheme = s;
  return g;
}

const GridSpec kLine = make(1, 256, 12.0);

std::shared_ptr<const ueq::radial::RadialQuadrature> quad(int n) {
  return ueq::radial::RadialQuadrature::midpoint(n, 40.0, 20000);
}

}  // namespace

TEST_CASE("position/momentum identities on the Gaussian families") {
  const auto coh = ueq::states::realize(ueq::states::GaussianSpec::coherent(1), kLine);
  const auto reps = verify_position_momentum(coh, 1e-8);
  CHECK(ueq::all_passed(reps));
  // n ||phi||^2 = 1 for the normalized coherent state.
  CHECK_THAT(find_report(reps, "xp.canonical").lhs.real(), WithinRel(1.0, 1e-12));
  // Pythagoras remainder ||x phi + grad phi||^2 vanishes: rhs = ||x phi||^2 + ||grad phi||^2 - 0 = 1.
  CHECK_THAT(find_report(reps, "xp.pythagoras").rhs.real(), WithinRel(1.0, 1e-12));

  const auto sq = ueq::states::realize(ueq::states::GaussianSpec::squeezed(1, 4.0), kLine);
  CHECK(ueq::all_passed(verify_position_momentum(sq, 1e-8)));
  const auto w = ueq::grid::position(sq) + ueq::grid::gradient(sq);
  // ||x phi + grad phi||^2 = 1/8 + 2 - 1 for lambda = 4.
  CHECK_THAT(inner(w, w).real(), WithinRel(1.125, 1e-10));
}

TEST_CASE("position/momentum identities hold on random states in 1-D and 2-D") {
  std::mt19937_64 rng(101);
  for (const auto& g : {kLine, make(2, 96, 10.0)}) {
    for (int t = 0; t < 10; ++t) {
      const auto phi = ueq::states::random_smooth_state(g, rng, g.dim == 1 ? 8 : 5);
      const auto reps = verify_position_momentum(phi, 1e-8);
      INFO("n = " << g.dim << ", trial " << t);
      CHECK(ueq::all_passed(reps));
    }
  }
}

TEST_CASE("position/momentum verifier rejects degenerate states") {
  CHECK_THROWS_AS(verify_position_momentum(StateField(kLine), 1e-8), std::invalid_argument);
}

TEST_CASE("saturation classification separates the three families") {
  using ueq::states::GaussianSpec;
  const auto coh = classify_position_momentum(ueq::states::realize(GaussianSpec::coherent(1), kLine));
  CHECK(coh.sum);
  CHECK(coh.product);
  CHECK(coh.modulus);
  const auto sq = classify_position_momentum(ueq::states::realize(GaussianSpec::squeezed(1, 4.0), kLine));
  CHECK_FALSE(sq.sum);
  CHECK(sq.product);
  CHECK(sq.modulus);
  CHECK(sq.parts.part(1));  // x phi = -(1/lambda) grad phi: real negative multiple
  const auto gen = classify_position_momentum(
      ueq::states::realize(GaussianSpec::squeezed_gen(1, 2.0, std::polar(1.0, 0.75 * pi)), kLine));
  CHECK_FALSE(gen.sum);
  CHECK_FALSE(gen.product);
  CHECK(gen.modulus);
  std::mt19937_64 rng(7);
  const auto rnd = classify_position_momentum(ueq::states::random_smooth_state(kLine, rng));
  CHECK_FALSE(rnd.modulus);
}

TEST_CASE("dilation gap on the coherent state") {
  // x.grad phi + phi/2 = (1/2 - x^2) phi, whose squared norm is 1/4 - 1/2 + 3/4 = 1/2;
  // ||x.grad phi||^2 = <x^4> = 3/4, ratio 3/4 / (1/4) = 3.
  const auto coh = ueq::states::realize(ueq::states::GaussianSpec::coherent(1), kLine);
  const auto reps = verify_dilation_gap(coh, 1e-8);
  CHECK(ueq::all_passed(reps));
  const auto& gap = find_report(reps, "dil.gap");
  CHECK(gap.relation == ueq::Relation::less);
  CHECK_THAT(gap.metrics.at("gap"), WithinRel(0.5, 1e-10));
  CHECK_THAT(gap.metrics.at("ratio"), WithinRel(3.0, 1e-10));
}

TEST_CASE("dilation gap identity on random grid and radial states") {
  std::mt19937_64 rng(55);
  for (int t = 0; t < 10; ++t) {
    CHECK(ueq::all_passed(verify_dilation_gap(ueq::states::random_smooth_state(kLine, rng), 1e-8)));
    const ueq::radial::RadialState s(ueq::states::random_radial_profile(rng), quad(3));
    CHECK(ueq::all_passed(verify_dilation_gap(s, 1e-8)));
  }
}

TEST_CASE("Hardy equality for e^{-r^2/2} in 3-D against closed-form integrals") {
  // ||d_r psi||^2 = 4 pi int r^4 e^{-r^2} dr = (3/2) pi^{3/2}
  // ||d_r psi + psi/(2r)||^2 = pi^{3/2}, ||psi/r||^2 = 2 pi^{3/2}
  const ueq::radial::RadialState psi(ueq::radial::gaussian(), quad(3));
  const auto reps = verify_hardy(psi, 1e-8);
  CHECK(ueq::all_passed(reps));
  const auto& eq = find_report(reps, "hardy.equality");
  CHECK_THAT(eq.lhs.real(), WithinRel(1.5 * std::pow(pi, 1.5), 1e-8));
  CHECK_THAT(eq.rhs.real(), WithinRel(std::pow(pi, 1.5) + 0.25 * 2.0 * std::pow(pi, 1.5), 1e-8));
}

TEST_CASE("Hardy identities on odd and random radial profiles") {
  const ueq::radial::RadialState odd(ueq::radial::odd_gaussian(), quad(3));
  CHECK(ueq::all_passed(verify_hardy(odd, 1e-8)));
  std::mt19937_64 rng(77);
  for (int t = 0; t < 20; ++t) {
    for (int n : {3, 5, 6}) {
      const ueq::radial::RadialState s(ueq::states::random_radial_profile(rng), quad(n));
      INFO("n = " << n << ", trial " << t);
      CHECK(ueq::all_passed(verify_hardy(s, 1e-8)));
    }
  }
}

TEST_CASE("Hardy residual in 4-D converges at second order on the midpoint rule") {
  // Profiles with a linear term make r|psi|^2 non-smooth at the origin, so the
  // midpoint error is O(h^2) there instead of rounding-level.
  const auto profile = ueq::radial::gaussian_polynomial({1.0, cx(0.8, -0.3)}, 1.0, "linear_term");
  auto residual = [&](int points) {
    const ueq::radial::RadialState s(profile, ueq::radial::RadialQuadrature::midpoint(4, 40.0, points));
    return find_report(verify_hardy(s, 1e-4), "hardy.equality").rel_residual;
  };
  const double coarse = residual(10000), fine = residual(20000);
  CHECK(coarse < 1e-5);
  CHECK_THAT(coarse / fine, WithinAbs(4.0, 0.2));
}

TEST_CASE("Hardy identities need n >= 3") {
  const ueq::radial::RadialState s(ueq::radial::gaussian(), quad(2));
  CHECK_THROWS_AS(verify_hardy(s), std::invalid_argument);
  const auto g = make(2, 32, 6.0);
  CHECK_THROWS_AS(verify_hardy(StateField::sample(g, [](auto) { return cx(1.0); })), std::invalid_argument);
}

TEST_CASE("Hardy equality on a 3-D tensor grid with the lattice correction") {
  const auto g = make(3, 96, 5.0);
  const auto psi = StateField::sample(g, [](std::span<const double> x) {
    return std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / 2.0);
  });
  const auto reps = verify_hardy(psi, 1e-3);
  CHECK(ueq::all_passed(reps));
  const auto& eq = find_report(reps, "hardy.equality");
  CHECK(eq.context.at("singular_correction") == "lattice");
  CHECK_THAT(eq.lhs.real(), WithinRel(1.5 * std::pow(pi, 1.5), 1e-3));
  CHECK_THAT(eq.rhs.real(), WithinRel(1.5 * std::pow(pi, 1.5), 1e-3));
}

TEST_CASE("dilation/Laplacian chain") {
  const auto coh = ueq::states::realize(ueq::states::GaussianSpec::coherent(1), kLine);
  const auto reps = verify_dilation_hamiltonian(coh, 1e-7);
  CHECK(ueq::all_passed(reps));
  CHECK_THAT(find_report(reps, "dh.grad_vs_hamiltonian").lhs.real(), WithinRel(1.0, 1e-12));

  std::mt19937_64 rng(19);
  for (int t = 0; t < 20; ++t) CHECK(ueq::all_passed(verify_dilation_hamiltonian(ueq::states::random_smooth_state(kLine, rng))));

  // A plane-wave-modulated Gaussian keeps the inequality strict.
  const auto wave = StateField::sample(kLine, [](std::span<const double> x) {
    return std::polar(std::exp(-x[0] * x[0] / 2.0), 1.5 * x[0]);
  });
  const auto& ineq = find_report(verify_dilation_hamiltonian(wave), "dh.inequality");
  CHECK(ineq.passed);
  CHECK(ineq.rhs.real() - ineq.lhs.real() > 0.1 * ineq.lhs.real());
}

TEST_CASE("integration by parts is exact for the spectral scheme") {
  std::mt19937_64 rng(20);
  const auto phi = ueq::states::random_smooth_state(kLine, rng);
  CHECK(find_report(verify_dilation_hamiltonian(phi, 1e-10), "dh.grad_vs_hamiltonian").passed);
}

TEST_CASE("radial Coulomb identities in 3 and 5 dimensions") {
  SECTION("n = 3 Gaussian: ||A phi|| = ||d_r phi|| and ||B phi||^2 = 2 pi^{3/2}") {
    const ueq::radial::RadialState phi(ueq::radial::gaussian(), quad(3));
    const auto reps = verify_radial_coulomb(phi, 1e-6);
    CHECK(ueq::all_passed(reps));
    CHECK_THAT(find_report(reps, "rc.coulomb_vs_commutator").lhs.real(), WithinRel(2.0 * std::pow(pi, 1.5), 1e-10));
    CHECK_THAT(find_report(reps, "rc.symmetrized_norm").lhs.real(), WithinRel(1.5 * std::pow(pi, 1.5), 1e-10));
    // Coulomb-form Hardy line is four times the Hardy equality.
    const auto hardy = verify_hardy(phi);
    CHECK_THAT(find_report(reps, "rc.hardy").lhs.real(),
               WithinRel(4.0 * find_report(hardy, "hardy.equality").lhs.real(), 1e-12));
    CHECK(find_report(reps, "rc.relative_bound").metrics.at("ratio") <= 1.0 + 1e-8);
  }
  SECTION("n = 5 Gaussian: ||A phi||^2 = |S^4| sqrt(pi) 7/16") {
    // ||d_r phi||^2 = |S^4| (15/16) sqrt(pi), ||phi/r||^2 = |S^4| sqrt(pi)/4, coefficient (4)(2)/4 = 2.
    const ueq::radial::RadialState phi(ueq::radial::gaussian(), quad(5));
    const auto reps = verify_radial_coulomb(phi, 1e-6);
    CHECK(ueq::all_passed(reps));
    const double s4 = 8.0 * pi * pi / 3.0;
    CHECK_THAT(find_report(reps, "rc.symmetrized_norm").lhs.real(), WithinRel(s4 * std::sqrt(pi) * 7.0 / 16.0, 1e-10));
  }
  SECTION("random profiles") {
    std::mt19937_64 rng(88);
    for (int t = 0; t < 20; ++t) {
      for (int n : {3, 5}) {
        const ueq::radial::RadialState phi(ueq::states::random_radial_profile(rng), quad(n));
        const auto reps = verify_radial_coulomb(phi, 1e-6);
        CHECK(ueq::all_passed(reps));
        CHECK(find_report(reps, "rc.relative_bound").metrics.at("ratio") <= 1.0 + 1e-8);
      }
    }
  }
}

TEST_CASE("radial Coulomb identities on a 3-D tensor grid") {
  const auto g = make(3, 64, 5.0);
  const auto phi = StateField::sample(g, [](std::span<const double> x) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    return cx(1.0, 0.3 * x[0]) * std::exp(-r2 / 2.0);
  });
  const auto reps = verify_radial_coulomb(phi, 5e-3);
  CHECK(ueq::all_passed(reps));
}

TEST_CASE("grid verifiers record the discretization") {
  const auto g = make(1, 128, 10.0, ueq::grid::Scheme::central_diff_4);
  const auto coh = ueq::states::realize(ueq::states::GaussianSpec::coherent(1), g);
  for (const auto& r : verify_position_momentum(coh, 1.0)) {
    CHECK(r.context.at("grid.scheme") == "central_diff_4");
    CHECK(r.context.at("grid.N") == "128");
  }
}
