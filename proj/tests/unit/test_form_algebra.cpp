#include <catch_amalgamated.hpp>

#include <Eigen/Dense>

#include <random>

#include "ueq/form_algebra.hpp"
#include "ueq/gaussian_states.hpp"
#include "ueq/operators.hpp"

using ueq::cx;
using ueq::space::ComplexVector;
using Sample = ueq::forms::PairSample<ComplexVector>;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Eigen::MatrixXcd random_hermitian(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = cx(g(rng), g(rng));
  return (m + m.adjoint()) / 2.0;
}

ComplexVector to_vector(const Eigen::VectorXcd& v) { return ComplexVector(std::vector<cx>(v.data(), v.data() + v.size())); }

struct MatrixCase {
  Eigen::MatrixXcd A, B;
  Eigen::VectorXcd phi;
  Sample sample;
};

MatrixCase make_case(int d, std::mt19937_64& rng) {
  Eigen::MatrixXcd A = random_hermitian(d, rng);
  Eigen::MatrixXcd B = random_hermitian(d, rng);
  std::normal_distribution<double> g;
  Eigen::VectorXcd phi(d);
  for (int i = 0; i < d; ++i) phi(i) = cx(g(rng), g(rng));
  Sample s = Sample::make(phi.squaredNorm(), to_vector(A * phi), to_vector(B * phi));
  return {A, B, phi, s};
}

}  // namespace

TEST_CASE("commutator and anticommutator forms agree with explicit matrix products") {
  std::mt19937_64 rng(17);
  for (int d : {2, 5, 12}) {
    const auto c = make_case(d, rng);
    // (T phi|phi) = phi^H T phi for the scalar product (u|v) = v^H u.
    const cx comm = c.phi.dot((c.A * c.B - c.B * c.A) * c.phi);
    const cx anti = c.phi.dot((c.A * c.B + c.B * c.A) * c.phi);
    const double scale = c.A.norm() * c.B.norm() * c.phi.squaredNorm();
    CHECK_THAT(std::abs(ueq::forms::commutator_form(c.sample) - comm) / scale, WithinAbs(0.0, 1e-14));
    CHECK_THAT(std::abs(ueq::forms::anticommutator_form(c.sample) - anti) / scale, WithinAbs(0.0, 1e-14));
    CHECK_THAT(comm.real() / scale, WithinAbs(0.0, 1e-14));
    CHECK_THAT(anti.imag() / scale, WithinAbs(0.0, 1e-14));
  }
}

TEST_CASE("form identities, decomposition and Schroedinger-Robertson equalities on random pairs") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 50; ++t) {
    const auto a = ueq::space::random_vector(8, rng);
    const auto b = ueq::space::random_vector(8, rng);
    const auto s = Sample::make(1.0, a, b);
    CHECK(ueq::all_passed(ueq::forms::form_identities(s, 1e-12)));
    const auto [ab, ba] = ueq::forms::decomposition_check(s, 1e-12);
    CHECK(ab.passed);
    CHECK(ba.passed);
    CHECK(ueq::all_passed(ueq::forms::sr_equalities(s, ueq::default_angles(rng), 1e-12)));
  }
}

TEST_CASE("uncertainty chain is ordered for Hermitian pairs") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 30; ++t) {
    const auto c = make_case(6, rng);
    const auto chain = ueq::forms::sr_inequality_chain(c.sample);
    CHECK(chain.ordered());
    // Robertson bound from the matrix commutator directly.
    const double robertson = 0.5 * std::abs(c.phi.dot((c.A * c.B - c.B * c.A) * c.phi));
    CHECK_THAT(chain.robertson_bound, WithinRel(robertson, 1e-12));
  }
}

TEST_CASE("Schroedinger-Robertson equalities reject a vanishing side") {
  const ComplexVector a{1.0, 2.0};
  const ComplexVector z{0.0, 0.0};
  const std::vector<double> thetas{0.0};
  CHECK_THROWS_AS(ueq::forms::sr_equalities(Sample::make(1.0, a, z), thetas, 1e-12), std::invalid_argument);
}

TEST_CASE("form-level extremal parts match the direct classification") {
  std::mt19937_64 rng(31);
  const auto a = ueq::space::random_vector(7, rng);
  for (cx lambda : {cx(2.0), cx(-3.0), cx(0.0, 1.0), cx(0.0, -1.0), std::polar(1.0, 1.1)}) {
    const auto s = Sample::make(1.0, a, lambda * a);
    const auto via_forms = ueq::forms::extremizer_parts(s, 1e-12);
    const auto direct = ueq::extremizer_class(a, lambda * a, 1e-12);
    for (int k = 1; k <= 5; ++k) {
      INFO("lambda = " << lambda << ", part " << k);
      CHECK(via_forms.part(k) == direct.part(k));
    }
  }
}

TEST_CASE("canonical pair on a grid: ([A,B]phi|phi) = -i ||phi||^2 for A = -i d/dx, B = x") {
  ueq::grid::GridSpec g;
  g.points = 256;
  g.half_width = 12.0;
  const auto phi = ueq::states::realize(ueq::states::GaussianSpec::squeezed(1, 2.5, 1.3), g);
  const auto a_phi = cx(0.0, -1.0) * ueq::grid::derivative(phi, 0);
  const auto b_phi = ueq::grid::position(phi)[0];
  const auto s = ueq::forms::PairSample<ueq::grid::StateField>::make(inner(phi, phi).real(), a_phi, b_phi);
  const cx comm = ueq::forms::commutator_form(s);
  CHECK_THAT(comm.real(), WithinAbs(0.0, 1e-14));
  CHECK_THAT(comm.imag(), WithinRel(-1.69, 1e-10));
  CHECK(ueq::all_passed(ueq::forms::form_identities(s, 1e-12)));
}
