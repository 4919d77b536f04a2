#pragma once

// Cauchy-Schwarz equalities and the equivalence classes of extremal pairs,
// written once for any ScalarProductSpace so the same code runs on C^d vectors
// and on gridded L^2 fields.

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ueq/complex_space.hpp"
#include "ueq/report.hpp"

namespace ueq {

/// A Part whose clause (a) holds while another clause of the same Part does not.
/// Signals a numerical or implementation bug; never a legitimate outcome.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Clauses of one Part are accepted as agreeing when within this factor of tol.
inline constexpr double kClauseSlack = 8.0;

struct PartVerdict {
  bool holds = false;
  /// Branch of the "+-" in Parts 1 and 2, from sgn of the governing scalar; 0 elsewhere.
  int sign = 0;
  /// Residual of clause (a), (b), (c)[, (d)] in that order.
  std::vector<double> clause_residuals;
};

struct ExtremizerParts {
  std::array<PartVerdict, 5> parts;
  bool part(int k) const { return parts.at(static_cast<std::size_t>(k - 1)).holds; }
};

/// Angle set used for the rotated modulus identities: the fixed angles
/// {0, pi/4, pi/2, 2, pi} followed by `random_count` uniform draws in [0, 2 pi).
std::vector<double> default_angles(std::mt19937_64& rng, int random_count = 8);

namespace detail {

/// 1 - ||a + c b||^2 / 2, evaluated by forming the vector a + c b.
template <ScalarProductSpace V>
double half_defect(const V& a, cx c, const V& b) {
  const V w = a + c * b;
  return 1.0 - 0.5 * inner(w, w).real();
}

/// ||L - R||^2 / (||L||^2 + ||R||^2); zero when both sides vanish.
template <ScalarProductSpace V>
double vector_residual(const V& lhs, const V& rhs) {
  const double den = inner(lhs, lhs).real() + inner(rhs, rhs).real();
  if (den == 0.0) return 0.0;
  const V d = lhs - rhs;
  return inner(d, d).real() / den;
}

inline double real_sign(double x) { return x >= 0.0 ? 1.0 : -1.0; }

/// Fills `holds` from clause (a) and enforces agreement of the remaining clauses.
/// `reverse_exact` lists clauses whose metric equals clause (a)'s exactly, so the
/// implication is also checked in reverse.
void settle_part(PartVerdict& part, int index, double tol, std::initializer_list<std::size_t> reverse_exact);

}  // namespace detail

/// Both sides of every Cauchy-Schwarz equality for a nonzero pair:
/// the modulus form, the +-Re and +-Im forms, the two Pythagorean modulus forms
/// and the rotated modulus form at each angle in `thetas`.
template <ScalarProductSpace V>
std::vector<EqualityReport> cs_equality_residuals(const V& u, const V& v, std::span<const double> thetas,
                                                  double tol = 1e-12) {
  const double nu = norm(u);
  const double nv = norm(v);
  if (nu == 0.0 || nv == 0.0) throw std::invalid_argument("cs_equality_residuals: u and v must be nonzero");

  const V uh = cx(1.0 / nu) * u;
  const V vh = cx(1.0 / nv) * v;
  const cx z = inner(u, v);
  const double p = nu * nv;
  const cx i{0.0, 1.0};
  auto d = [&](cx c) { return detail::half_defect(uh, c, vh); };
  auto hyp = [](double a, double b) { return std::sqrt(a * a + b * b); };

  std::vector<EqualityReport> out;
  out.push_back(make_equality("cs.modulus", std::abs(z), p * d(-sgn(z)), tol));
  out.push_back(make_equality("cs.real.plus", z.real(), p * d(-1.0), tol));
  out.push_back(make_equality("cs.real.minus", -z.real(), p * d(1.0), tol));
  out.push_back(make_equality("cs.imag.plus", z.imag(), p * d(-i), tol));
  out.push_back(make_equality("cs.imag.minus", -z.imag(), p * d(i), tol));
  out.push_back(make_equality("cs.modulus_re_im.plus", std::abs(z), p * hyp(d(1.0), d(i)), tol));
  out.push_back(make_equality("cs.modulus_re_im.minus", std::abs(z), p * hyp(d(-1.0), d(-i)), tol));
  out.push_back(make_equality("cs.modulus_re_conj_im.plus", std::abs(z), p * hyp(d(1.0), d(-i)), tol));
  out.push_back(make_equality("cs.modulus_re_conj_im.minus", std::abs(z), p * hyp(d(-1.0), d(i)), tol));
  for (double theta : thetas) {
    const cx rot = std::polar(1.0, theta);
    auto plus = make_equality("cs.modulus_rotated.plus", std::abs(z), p * hyp(d(rot), d(i * rot)), tol);
    auto minus = make_equality("cs.modulus_rotated.minus", std::abs(z), p * hyp(d(rot), d(-i * rot)), tol);
    plus.metrics["theta"] = theta;
    minus.metrics["theta"] = theta;
    out.push_back(std::move(plus));
    out.push_back(std::move(minus));
  }
  return out;
}

/// Which of the five extremal Parts the pair (u, v) satisfies, with every clause
/// of each Part evaluated independently.
///
/// Clause (a) is measured by its relative deficiency (e.g. 1 - |(u|v)|/(|u||v|));
/// vector clauses by ||L - R||^2 / (||L||^2 + ||R||^2) and the vanishing-component
/// halves of clause (b) by (component / |u||v|)^2 / 2. With these metrics a clause
/// (a) residual eps bounds every other clause by 2 eps, so disagreement beyond
/// kClauseSlack * tol throws ConsistencyError.
template <ScalarProductSpace V>
ExtremizerParts extremizer_class(const V& u, const V& v, double tol) {
  ExtremizerParts out;
  const double nu = norm(u);
  const double nv = norm(v);
  const double p = nu * nv;
  if (p == 0.0) {
    for (auto& part : out.parts) {
      part.holds = true;
      part.clause_residuals = {0.0, 0.0, 0.0, 0.0};
    }
    out.parts[0].sign = out.parts[1].sign = 1;
    return out;
  }
  const cx z = inner(u, v);
  const cx i{0.0, 1.0};
  const double nu2 = nu * nu;
  const double nv2 = nv * nv;

  {  // Part 1: Re(u|v) = +-|u||v|
    const double s = detail::real_sign(z.real());
    auto& part = out.parts[0];
    part.sign = static_cast<int>(s);
    part.clause_residuals = {
        std::abs(z.real() - s * p) / p,
        detail::vector_residual(cx(nv) * u, cx(s * nu) * v),
        std::norm(z - s * p) / (2.0 * p * p),
    };
    detail::settle_part(part, 1, tol, {1});
  }
  {  // Part 2: Im(u|v) = +-|u||v|
    const double s = detail::real_sign(z.imag());
    auto& part = out.parts[1];
    part.sign = static_cast<int>(s);
    part.clause_residuals = {
        std::abs(z.imag() - s * p) / p,
        detail::vector_residual(cx(nv) * u, (s * nu) * i * v),
        std::norm(z - s * i * p) / (2.0 * p * p),
    };
    detail::settle_part(part, 2, tol, {1});
  }
  {  // Part 3: |Re(u|v)| = |u||v|
    auto& part = out.parts[2];
    const double im = z.imag() / p;
    part.clause_residuals = {
        1.0 - std::abs(z.real()) / p,
        std::max(0.5 * im * im, 1.0 - std::abs(z) / p),
        detail::vector_residual(cx(nv2) * u, cx(z.real()) * v),
        detail::vector_residual(cx(nu2) * v, cx(z.real()) * u),
    };
    detail::settle_part(part, 3, tol, {});
  }
  {  // Part 4: |Im(u|v)| = |u||v|
    auto& part = out.parts[3];
    const double re = z.real() / p;
    part.clause_residuals = {
        1.0 - std::abs(z.imag()) / p,
        std::max(0.5 * re * re, 1.0 - std::abs(z) / p),
        detail::vector_residual(cx(nv2) * u, i * z.imag() * v),
        detail::vector_residual(cx(nu2) * v, -i * z.imag() * u),
    };
    detail::settle_part(part, 4, tol, {});
  }
  {  // Part 5: |(u|v)| = |u||v|
    auto& part = out.parts[4];
    part.clause_residuals = {
        1.0 - std::abs(z) / p,
        detail::vector_residual(cx(nv) * u, sgn(z) * nu * v),
        detail::vector_residual(cx(nv2) * u, z * v),
        detail::vector_residual(cx(nu2) * v, std::conj(z) * u),
    };
    detail::settle_part(part, 5, tol, {1});
  }
  return out;
}

}  // namespace ueq
