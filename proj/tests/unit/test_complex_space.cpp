#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "ueq/cauchy_schwarz.hpp"
#include "ueq/complex_space.hpp"

using ueq::cx;
using ueq::space::ComplexVector;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const cx I{0.0, 1.0};
}

TEST_CASE("scalar product is linear in the first slot and conjugate-linear in the second") {
  const ComplexVector u{cx(1, 2), cx(0, -1)};
  const ComplexVector v{cx(3, 0), cx(1, 1)};
  // (u|v) = (1+2i)*3 + (-i)*(1-i) = 3 + 6i - i - 1 = 2 + 5i
  CHECK(ueq::space::inner(u, v) == cx(2, 5));
  CHECK(ueq::space::inner(I * u, v) == I * cx(2, 5));
  CHECK(ueq::space::inner(u, I * v) == -I * cx(2, 5));
  CHECK(ueq::space::inner(v, u) == std::conj(cx(2, 5)));
}

TEST_CASE("mismatched dimensions are rejected") {
  const ComplexVector u{1.0, 2.0};
  const ComplexVector v{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(ueq::space::inner(u, v), ueq::ShapeMismatch);
  CHECK_THROWS_AS(u + v, ueq::ShapeMismatch);
}

TEST_CASE("sgn maps to the unit circle with sgn(0) = 1") {
  CHECK(ueq::sgn(cx(0, 0)) == cx(1, 0));
  CHECK(ueq::sgn(cx(0, 3)) == cx(0, 1));
  CHECK_THAT(std::abs(ueq::sgn(cx(-2, 7))), WithinAbs(1.0, 1e-15));
}

TEST_CASE("equality forms on a hand-worked pair") {
  // u = (1, 0), v = (1, 1): (u|v) = 1, |u||v| = sqrt 2, u^ - v^ has squared norm 2 - sqrt 2.
  const ComplexVector u{1.0, 0.0};
  const ComplexVector v{1.0, 1.0};
  std::mt19937_64 rng(3);
  const auto thetas = ueq::default_angles(rng);
  const auto reps = ueq::cs_equality_residuals(u, v, thetas, 1e-14);
  CHECK(ueq::all_passed(reps));
  const auto& mod = ueq::find_report(reps, "cs.modulus");
  CHECK_THAT(mod.lhs.real(), WithinAbs(1.0, 1e-15));
  CHECK_THAT(mod.rhs.real(), WithinAbs(std::sqrt(2.0) * (1.0 - (2.0 - std::sqrt(2.0)) / 2.0), 1e-15));
}

TEST_CASE("equality forms hold on random pairs across dimensions") {
  std::mt19937_64 rng(42);
  for (std::size_t d : {2u, 3u, 7u, 16u, 64u}) {
    for (int t = 0; t < 20; ++t) {
      const auto u = ueq::space::random_vector(d, rng);
      const auto v = ueq::space::random_vector(d, rng);
      const auto reps = ueq::cs_equality_residuals(u, v, ueq::default_angles(rng), 1e-12);
      INFO("d = " << d);
      CHECK(ueq::all_passed(reps));
      CHECK(std::abs(ueq::space::inner(u, v)) <= ueq::norm(u) * ueq::norm(v));
    }
  }
}

TEST_CASE("equality forms reject zero vectors") {
  const ComplexVector u{1.0, 2.0};
  const ComplexVector z{0.0, 0.0};
  const std::vector<double> thetas{0.0};
  CHECK_THROWS_AS(ueq::cs_equality_residuals(u, z, thetas, 1e-12), std::invalid_argument);
}

TEST_CASE("extremal parts for parallel pairs") {
  std::mt19937_64 rng(5);
  const auto u = ueq::space::random_vector(9, rng);
  const double tol = 1e-12;

  SECTION("positive real multiple") {
    const auto p = ueq::extremizer_class(u, cx(2.0) * u, tol);
    CHECK(p.part(1));
    CHECK(p.parts[0].sign == 1);
    CHECK_FALSE(p.part(2));
    CHECK(p.part(3));
    CHECK_FALSE(p.part(4));
    CHECK(p.part(5));
  }
  SECTION("negative real multiple") {
    const auto p = ueq::extremizer_class(u, cx(-3.0) * u, tol);
    CHECK(p.part(1));
    CHECK(p.parts[0].sign == -1);
    CHECK(p.part(3));
    CHECK(p.part(5));
    CHECK_FALSE(p.part(4));
  }
  SECTION("imaginary multiples") {
    // (u|iu) = -i|u|^2, so Im(u|v) = -|u||v|.
    const auto p = ueq::extremizer_class(u, I * u, tol);
    CHECK(p.part(2));
    CHECK(p.parts[1].sign == -1);
    CHECK(p.part(4));
    CHECK(p.part(5));
    CHECK_FALSE(p.part(1));
    CHECK_FALSE(p.part(3));
    const auto q = ueq::extremizer_class(u, -I * u, tol);
    CHECK(q.parts[1].sign == 1);
  }
  SECTION("generic unit phase") {
    const auto p = ueq::extremizer_class(u, std::polar(1.0, 0.9) * u, tol);
    CHECK(p.part(5));
    for (int k = 1; k <= 4; ++k) CHECK_FALSE(p.part(k));
  }
  SECTION("fired clauses agree within the consistency slack") {
    for (cx lambda : {cx(2.0), cx(-3.0), I, -I, std::polar(1.0, 2.2)}) {
      const auto p = ueq::extremizer_class(u, lambda * u, tol);
      for (const auto& part : p.parts) {
        if (!part.holds) continue;
        for (double r : part.clause_residuals) CHECK(r <= ueq::kClauseSlack * tol);
      }
    }
  }
}

TEST_CASE("no part fires for independent or orthogonal pairs") {
  std::mt19937_64 rng(6);
  const auto u = ueq::space::random_vector(5, rng);
  const auto v = ueq::space::random_vector(5, rng);
  const auto p = ueq::extremizer_class(u, v, 1e-12);
  for (int k = 1; k <= 5; ++k) CHECK_FALSE(p.part(k));

  const ComplexVector a{1.0, 0.0};
  const ComplexVector b{0.0, 1.0};
  const auto q = ueq::extremizer_class(a, b, 1e-12);
  for (int k = 1; k <= 5; ++k) CHECK_FALSE(q.part(k));
}

TEST_CASE("a zero vector satisfies every part trivially") {
  const ComplexVector u{1.0, 2.0};
  const ComplexVector z{0.0, 0.0};
  const auto p = ueq::extremizer_class(u, z, 1e-12);
  for (int k = 1; k <= 5; ++k) CHECK(p.part(k));
}

TEST_CASE("near-parallel pairs flip parts at the tolerance boundary") {
  const ComplexVector u{1.0, 0.0, 0.0};
  const ComplexVector e{0.0, 1.0, 0.0};
  // v = u + eps e: 1 - |(u|v)|/(|u||v|) ~ eps^2 / 2.
  const auto inside = ueq::extremizer_class(u, u + cx(1e-7) * e, 1e-12);
  const auto outside = ueq::extremizer_class(u, u + cx(1e-4) * e, 1e-12);
  CHECK(inside.part(5));
  CHECK_FALSE(outside.part(5));
}

TEST_CASE("random vectors are reproducible per seed") {
  std::mt19937_64 a(9), b(9);
  const auto u = ueq::space::random_vector(4, a, true);
  const auto v = ueq::space::random_vector(4, b, true);
  CHECK(ueq::space::inner(u - v, u - v) == cx(0.0));
  CHECK_THAT(ueq::norm(u), WithinRel(1.0, 1e-14));
}
