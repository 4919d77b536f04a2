#pragma once

// Commutator and anticommutator sesquilinear forms of a symmetric pair (A, B),
// evaluated only through the vectors A phi and B phi so that no operator
// composition (and hence no domain of AB or BA) is ever needed.

#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ueq/cauchy_schwarz.hpp"
#include "ueq/complex_space.hpp"
#include "ueq/report.hpp"

namespace ueq::forms {

template <ScalarProductSpace V>
struct PairSample {
  double phi_norm_sq = 0.0;  ///< ||phi||^2
  V a_phi;                   ///< A phi
  V b_phi;                   ///< B phi
  cx inner_ab{};             ///< (A phi | B phi)

  static PairSample make(double phi_norm_sq, V a_phi, V b_phi) {
    const cx z = inner(a_phi, b_phi);
    return PairSample{phi_norm_sq, std::move(a_phi), std::move(b_phi), z};
  }
};

/// ([A,B]phi|phi) = -2i Im(A phi|B phi); purely imaginary.
template <ScalarProductSpace V>
cx commutator_form(const PairSample<V>& s) {
  return {0.0, -2.0 * s.inner_ab.imag()};
}

/// ({A,B}phi|phi) = 2 Re(A phi|B phi).
template <ScalarProductSpace V>
double anticommutator_form(const PairSample<V>& s) {
  return 2.0 * s.inner_ab.real();
}

/// The commutator and anticommutator forms from their definitions
/// (B phi|A phi) -+ (A phi|B phi), with (B phi|A phi) evaluated afresh.
template <ScalarProductSpace V>
std::pair<cx, cx> forms_by_definition(const PairSample<V>& s) {
  const cx ba = inner(s.b_phi, s.a_phi);
  return {ba - s.inner_ab, ba + s.inner_ab};
}

/// Every closed-form expression of both forms against its definition, plus the
/// reality conditions (commutator imaginary, anticommutator real).
template <ScalarProductSpace V>
std::vector<EqualityReport> form_identities(const PairSample<V>& s, double tol = 1e-12) {
  const cx i{0.0, 1.0};
  const cx ab = s.inner_ab;
  const cx ba = inner(s.b_phi, s.a_phi);
  const auto [comm, anti] = forms_by_definition(s);
  std::vector<EqualityReport> out;
  out.push_back(make_equality("forms.commutator.imaginary", comm.real(), 0.0, tol));
  out.push_back(make_equality("forms.commutator.im_ab", comm, cx(0.0, -2.0 * ab.imag()), tol));
  out.push_back(make_equality("forms.commutator.re_i_ab", comm, 2.0 * i * (i * ab).real(), tol));
  out.push_back(make_equality("forms.commutator.im_ba", comm, 2.0 * i * ba.imag(), tol));
  out.push_back(make_equality("forms.commutator.re_i_ba", comm, -2.0 * i * (i * ba).real(), tol));
  out.push_back(make_equality("forms.anticommutator.real", anti.imag(), 0.0, tol));
  out.push_back(make_equality("forms.anticommutator.re_ab", anti, 2.0 * ab.real(), tol));
  out.push_back(make_equality("forms.anticommutator.im_i_ab", anti, 2.0 * (i * ab).imag(), tol));
  out.push_back(make_equality("forms.anticommutator.re_ba", anti, 2.0 * ba.real(), tol));
  out.push_back(make_equality("forms.anticommutator.im_i_ba", anti, 2.0 * (i * ba).imag(), tol));
  return out;
}

/// (A phi|B phi) = ({A,B}phi|phi)/2 - ([A,B]phi|phi)/2 and
/// (B phi|A phi) = ({A,B}phi|phi)/2 + ([A,B]phi|phi)/2.
template <ScalarProductSpace V>
std::pair<EqualityReport, EqualityReport> decomposition_check(const PairSample<V>& s, double tol = 1e-12) {
  const cx comm = commutator_form(s);
  const double anti = anticommutator_form(s);
  const cx ba = inner(s.b_phi, s.a_phi);
  return {make_equality("forms.decomposition.ab", s.inner_ab, 0.5 * anti - 0.5 * comm, tol),
          make_equality("forms.decomposition.ba", ba, 0.5 * anti + 0.5 * comm, tol)};
}

/// The Schroedinger-Robertson equalities for A phi != 0, B phi != 0: commutator
/// and anticommutator forms as normalized-distance defects, and the three
/// expressions of |(A phi|B phi)| (forms, rotated at each theta, sign-aligned).
template <ScalarProductSpace V>
std::vector<EqualityReport> sr_equalities(const PairSample<V>& s, std::span<const double> thetas,
                                          double tol = 1e-12) {
  const double na = norm(s.a_phi);
  const double nb = norm(s.b_phi);
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("sr_equalities: A phi and B phi must be nonzero");
  const V ah = cx(1.0 / na) * s.a_phi;
  const V bh = cx(1.0 / nb) * s.b_phi;
  const double p = na * nb;
  const cx i{0.0, 1.0};
  const auto [comm, anti] = forms_by_definition(s);
  const cx z = s.inner_ab;
  // 2 - ||a + c b||^2 and 1 - ||a + c b||^2 / 2 on the unit vectors.
  auto two_minus = [&](cx c) { return 2.0 * detail::half_defect(ah, c, bh); };
  auto d = [&](cx c) { return detail::half_defect(ah, c, bh); };

  std::vector<EqualityReport> out;
  out.push_back(make_equality("sr.commutator.plus", i * comm, p * two_minus(-i), tol));
  out.push_back(make_equality("sr.commutator.minus", -i * comm, p * two_minus(i), tol));
  out.push_back(make_equality("sr.anticommutator.plus", anti, p * two_minus(-1.0), tol));
  out.push_back(make_equality("sr.anticommutator.minus", -anti, p * two_minus(1.0), tol));
  out.push_back(make_equality("sr.modulus.forms", std::abs(z), 0.5 * std::sqrt(std::norm(comm) + std::norm(anti)), tol));
  for (double theta : thetas) {
    const cx rot = std::polar(1.0, theta);
    auto plus = make_equality("sr.modulus.rotated.plus", std::abs(z), p * std::hypot(d(rot), d(i * rot)), tol);
    auto minus = make_equality("sr.modulus.rotated.minus", std::abs(z), p * std::hypot(d(rot), d(-i * rot)), tol);
    plus.metrics["theta"] = theta;
    minus.metrics["theta"] = theta;
    out.push_back(std::move(plus));
    out.push_back(std::move(minus));
  }
  out.push_back(make_equality("sr.modulus.sign", std::abs(z), p * d(-sgn(z)), tol));
  return out;
}

struct UncertaintyChain {
  double product = 0.0;            ///< ||A phi|| ||B phi||
  double schrodinger_bound = 0.0;  ///< (|([A,B]phi|phi)|^2 + |({A,B}phi|phi)|^2)^{1/2} / 2
  double robertson_bound = 0.0;    ///< |([A,B]phi|phi)| / 2

  bool ordered(double slack = 1e-12) const {
    const double scale = std::max(product, 1.0);
    return product + slack * scale >= schrodinger_bound && schrodinger_bound + slack * scale >= robertson_bound;
  }
};

template <ScalarProductSpace V>
UncertaintyChain sr_inequality_chain(const PairSample<V>& s) {
  const cx comm = commutator_form(s);
  const double anti = anticommutator_form(s);
  return {norm(s.a_phi) * norm(s.b_phi), 0.5 * std::sqrt(std::norm(comm) + anti * anti), 0.5 * std::abs(comm)};
}

/// The five extremal Parts for the pair, stated through the forms. Clause
/// metrics and the consistency rule match extremizer_class.
template <ScalarProductSpace V>
ExtremizerParts extremizer_parts(const PairSample<V>& s, double tol) {
  ExtremizerParts out;
  const V& a = s.a_phi;
  const V& b = s.b_phi;
  const double na = norm(a);
  const double nb = norm(b);
  const double p = na * nb;
  if (p == 0.0) {
    for (auto& part : out.parts) {
      part.holds = true;
      part.clause_residuals = {0.0, 0.0, 0.0, 0.0};
    }
    out.parts[0].sign = out.parts[1].sign = 1;
    return out;
  }
  const cx i{0.0, 1.0};
  const cx z = s.inner_ab;
  const cx comm = commutator_form(s);
  const double anti = anticommutator_form(s);
  const double i_comm = (i * comm).real();
  const double na2 = na * na;
  const double nb2 = nb * nb;

  {  // ({A,B}phi|phi) = +-2|A phi||B phi|
    auto& part = out.parts[0];
    const double sg = detail::real_sign(anti);
    part.sign = static_cast<int>(sg);
    part.clause_residuals = {
        std::abs(anti - 2.0 * sg * p) / (2.0 * p),
        detail::vector_residual(cx(nb) * a, cx(sg * na) * b),
        std::norm(z - sg * p) / (2.0 * p * p),
    };
    detail::settle_part(part, 1, tol, {1});
  }
  {  // i([A,B]phi|phi) = +-2|A phi||B phi|
    auto& part = out.parts[1];
    const double sg = detail::real_sign(i_comm);
    part.sign = static_cast<int>(sg);
    part.clause_residuals = {
        std::abs(i_comm - 2.0 * sg * p) / (2.0 * p),
        detail::vector_residual(cx(nb) * a, (sg * na) * i * b),
        std::norm(z - sg * i * p) / (2.0 * p * p),
    };
    detail::settle_part(part, 2, tol, {1});
  }
  {  // |({A,B}phi|phi)| = 2|A phi||B phi|
    auto& part = out.parts[2];
    const double c = std::abs(comm) / (2.0 * p);
    part.clause_residuals = {
        1.0 - std::abs(anti) / (2.0 * p),
        std::max(0.5 * c * c, 1.0 - std::abs(z) / p),
        detail::vector_residual(cx(2.0 * nb2) * a, cx(anti) * b),
        detail::vector_residual(cx(2.0 * na2) * b, cx(anti) * a),
    };
    detail::settle_part(part, 3, tol, {});
  }
  {  // |([A,B]phi|phi)| = 2|A phi||B phi|
    auto& part = out.parts[3];
    const double c = anti / (2.0 * p);
    part.clause_residuals = {
        1.0 - std::abs(comm) / (2.0 * p),
        std::max(0.5 * c * c, 1.0 - std::abs(z) / p),
        detail::vector_residual(cx(2.0 * nb2) * a, -comm * b),
        detail::vector_residual(cx(2.0 * na2) * b, comm * a),
    };
    detail::settle_part(part, 4, tol, {});
  }
  {  // |(A phi|B phi)| = |A phi||B phi|
    auto& part = out.parts[4];
    part.clause_residuals = {
        1.0 - std::abs(z) / p,
        detail::vector_residual(cx(nb) * a, sgn(z) * na * b),
        detail::vector_residual(cx(nb2) * a, z * b),
        detail::vector_residual(cx(na2) * b, std::conj(z) * a),
    };
    detail::settle_part(part, 5, tol, {1});
  }
  return out;
}

}  // namespace ueq::forms
