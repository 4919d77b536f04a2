#include "ueq/identity_suite.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ueq/operators.hpp"

namespace ueq::identities {

namespace {

using grid::StateField;
using grid::VectorField;
using radial::RadialField;
using radial::RadialState;

template <typename V>
double nsq(const V& v) {
  return inner(v, v).real();
}

void stamp(std::vector<EqualityReport>& reps, const std::map<std::string, std::string>& ctx) {
  for (auto& r : reps) r.context.insert(ctx.begin(), ctx.end());
}

std::map<std::string, std::string> radial_context(const RadialState& s) {
  return {{"radial.quadrature", s.quadrature().describe()},
          {"radial.n", std::to_string(s.dim())},
          {"state", s.profile().name}};
}

void require_hardy_dim(int n) {
  if (n < 3) throw std::invalid_argument("Hardy-type identities need n >= 3 (got n = " + std::to_string(n) + ")");
}

// Scalar products of fields that may carry a c psi/|x| singular part.
struct SingularProducts {
  const StateField& psi;
  bool corrected;
  cx origin;

  explicit SingularProducts(const StateField& p)
      : psi(p), corrected(grid::supports_singular_correction(p.grid())), origin(corrected ? grid::origin_value(p) : cx{}) {}

  cx operator()(const StateField& f, const StateField& g, cx cf, cx cg) const {
    return corrected ? grid::singular_inner(f, g, cf, cg, origin) : grid::l2_inner(f, g);
  }
  double norm_sq(const StateField& f, cx c) const { return (*this)(f, f, c, c).real(); }
  const char* label() const { return corrected ? "lattice" : "none"; }
};

}  // namespace

std::vector<EqualityReport> verify_position_momentum(const StateField& phi, double tol) {
  const double n = phi.grid().dim;
  const VectorField x = grid::position(phi);
  const VectorField g = grid::gradient(phi);
  const double nx = norm(x);
  const double ng = norm(g);
  if (nx == 0.0 || ng == 0.0) throw std::invalid_argument("verify_position_momentum: x phi and grad phi must be nonzero");
  const double phi_sq = nsq(phi);
  const double lhs = n * phi_sq;
  const cx z = inner(x, g);
  const double p = nx * ng;
  const VectorField xh = cx(1.0 / nx) * x;
  const VectorField gh = cx(1.0 / ng) * g;

  std::vector<EqualityReport> out;
  out.push_back(make_equality("xp.canonical", lhs, -2.0 * z.real(), tol));
  out.back().metrics["x_norm"] = nx;
  out.back().metrics["grad_norm"] = ng;
  out.push_back(make_equality("xp.normalized_sum", lhs, p * (2.0 - nsq(xh + gh)), tol));
  out.push_back(make_equality("xp.pythagoras", lhs, nx * nx + ng * ng - nsq(x + g), tol));
  out.push_back(make_equality("xp.schrodinger", std::abs(z), p * (1.0 - 0.5 * nsq(xh - sgn(z) * gh)), tol));
  const StateField sym = grid::x_dot_grad(phi) + cx(n / 2.0) * phi;
  out.push_back(make_equality("xp.orthogonality", inner(sym, phi).real() / phi_sq, 0.0, tol));
  stamp(out, phi.grid().describe());
  return out;
}

PositionMomentumSaturation classify_position_momentum(const StateField& phi, double tol) {
  const double n = phi.grid().dim;
  const VectorField x = grid::position(phi);
  const VectorField g = grid::gradient(phi);
  const double nx = norm(x);
  const double ng = norm(g);
  const double lhs = n * nsq(phi);
  PositionMomentumSaturation s;
  s.sum = relative_residual(lhs, nx * nx + ng * ng) <= tol;
  s.product = relative_residual(lhs, 2.0 * nx * ng) <= tol;
  s.modulus = relative_residual(std::abs(inner(x, g)), nx * ng) <= tol;
  s.parts = extremizer_class(x, g, tol);
  return s;
}

std::vector<EqualityReport> verify_dilation_gap(const StateField& phi, double tol) {
  const double n = phi.grid().dim;
  const StateField d = grid::x_dot_grad(phi);
  const double phi_sq = nsq(phi);
  const double gap = nsq(d + cx(n / 2.0) * phi);
  const double base = (n / 2.0) * (n / 2.0) * phi_sq;
  std::vector<EqualityReport> out;
  out.push_back(make_equality("dil.gap_identity", nsq(d), gap + base, tol));
  out.push_back(make_strict_inequality("dil.gap", 0.0, gap, tol * phi_sq));
  for (auto& r : out) {
    r.metrics["gap"] = gap;
    r.metrics["ratio"] = nsq(d) / base;
  }
  stamp(out, phi.grid().describe());
  return out;
}

std::vector<EqualityReport> verify_dilation_gap(const RadialState& phi, double tol) {
  const double n = phi.dim();
  const RadialField d = phi.map([](double r, cx, cx df) { return r * df; });
  const RadialField shifted = phi.map([n](double r, cx f, cx df) { return r * df + (n / 2.0) * f; });
  const double phi_sq = nsq(phi.values());
  const double gap = nsq(shifted);
  const double base = (n / 2.0) * (n / 2.0) * phi_sq;
  std::vector<EqualityReport> out;
  out.push_back(make_equality("dil.gap_identity", nsq(d), gap + base, tol));
  out.push_back(make_strict_inequality("dil.gap", 0.0, gap, tol * phi_sq));
  for (auto& r : out) {
    r.metrics["gap"] = gap;
    r.metrics["ratio"] = nsq(d) / base;
  }
  stamp(out, radial_context(phi));
  return out;
}

std::vector<EqualityReport> verify_hardy(const RadialState& psi, double tol) {
  const int n = psi.dim();
  require_hardy_dim(n);
  const double c = (n - 2) / 2.0;
  const RadialField dr = psi.derivative();
  const RadialField over_r = psi.map([](double r, cx f, cx) { return f / r; });
  const RadialField remainder = psi.map([c](double r, cx f, cx df) { return df + c * f / r; });
  // phi = psi/|x| has phi' = (r psi' - psi)/r^2, so x.grad phi = r phi'.
  const RadialField x_grad_phi = psi.map([](double r, cx f, cx df) { return r * ((r * df - f) / (r * r)); });
  const RadialField shifted = psi.map([n](double r, cx f, cx df) {
    const cx phi = f / r;
    return r * ((r * df - f) / (r * r)) + (n / 2.0) * phi;
  });

  const double dr_sq = nsq(dr);
  const double over_sq = nsq(over_r);
  const double k = 2.0 / (n - 2);
  std::vector<EqualityReport> out;
  out.push_back(make_equality("hardy.equality", dr_sq, nsq(remainder) + c * c * over_sq, tol));
  out.push_back(make_equality("hardy.transfer_lhs", nsq(x_grad_phi), dr_sq + (n - 1) * over_sq, tol));
  out.push_back(make_equality("hardy.transfer_remainder", nsq(shifted), nsq(remainder), tol));
  // For radial psi, grad psi = (x/|x|) d_r psi, so ||grad psi|| = ||d_r psi||.
  out.push_back(make_inequality("hardy.chain.radial", std::sqrt(over_sq), k * std::sqrt(dr_sq), tol));
  out.push_back(make_inequality("hardy.chain.gradient", k * std::sqrt(dr_sq), k * std::sqrt(dr_sq), tol));
  stamp(out, radial_context(psi));
  return out;
}

std::vector<EqualityReport> verify_hardy(const StateField& psi, double tol) {
  const int n = psi.grid().dim;
  require_hardy_dim(n);
  const double c = (n - 2) / 2.0;
  const SingularProducts sp(psi);
  const StateField dr = grid::radial_derivative(psi);
  const StateField over_r = grid::divide_by_radius(psi);
  const StateField remainder = dr + cx(c) * over_r;
  const double dr_sq = nsq(dr);
  const double over_sq = sp.norm_sq(over_r, 1.0);
  const double grad_sq = nsq(grid::gradient(psi));
  const double k = 2.0 / (n - 2);

  std::vector<EqualityReport> out;
  out.push_back(make_equality("hardy.equality", dr_sq, sp.norm_sq(remainder, c) + c * c * over_sq, tol));
  out.push_back(make_inequality("hardy.chain.radial", std::sqrt(over_sq), k * std::sqrt(dr_sq), tol));
  out.push_back(make_inequality("hardy.chain.gradient", k * std::sqrt(dr_sq), k * std::sqrt(grad_sq), tol));
  stamp(out, psi.grid().describe());
  for (auto& r : out) r.context["singular_correction"] = sp.label();
  return out;
}

std::vector<EqualityReport> verify_dilation_hamiltonian(const StateField& phi, double tol) {
  const double n = phi.grid().dim;
  const cx i{0.0, 1.0};
  const StateField shifted = grid::x_dot_grad(phi) + cx(n / 2.0) * phi;
  const StateField a = -i * shifted;
  const StateField b = grid::neg_laplacian(phi);
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("verify_dilation_hamiltonian: A phi and B phi must be nonzero");
  const double grad_sq = nsq(grid::gradient(phi));
  const double lhs = 2.0 * grad_sq;
  const cx z = inner(a, b);
  const cx comm = inner(b, a) - z;
  const StateField w = cx(1.0 / na) * a + (i / nb) * b;

  std::vector<EqualityReport> out;
  out.push_back(make_equality("dh.grad_vs_hamiltonian", lhs, 2.0 * inner(b, phi), tol));
  out.push_back(make_equality("dh.grad_vs_commutator", lhs, -i * comm, tol));
  out.push_back(make_equality("dh.grad_vs_imag", lhs, -2.0 * z.imag(), tol));
  out.push_back(make_equality("dh.grad_vs_normalized", lhs, na * nb * (2.0 - nsq(w)), tol));
  out.push_back(make_inequality("dh.inequality", grad_sq, norm(shifted) * nb, 1e-12));
  out.back().metrics["slack"] = norm(shifted) * nb - grad_sq;
  stamp(out, phi.grid().describe());
  return out;
}

std::vector<EqualityReport> verify_radial_coulomb(const RadialState& phi, double tol) {
  const int n = phi.dim();
  require_hardy_dim(n);
  const cx i{0.0, 1.0};
  const double c = (n - 2) / 2.0;
  const RadialField a = phi.map([n, i](double r, cx f, cx df) { return -i * (df + (n - 1) / (2.0 * r) * f); });
  const RadialField b = phi.map([](double r, cx f, cx) { return f / r; });
  const RadialField dr = phi.derivative();
  const RadialField remainder = phi.map([c](double r, cx f, cx df) { return df + c * f / r; });
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("verify_radial_coulomb: A phi and B phi must be nonzero");
  const double b_sq = nb * nb;
  const cx z = inner(a, b);
  const cx comm = inner(b, a) - z;
  const double coeff = (n - 1) * (n - 3) / 4.0;

  std::vector<EqualityReport> out;
  out.push_back(make_equality("rc.coulomb_vs_commutator", b_sq, -i * comm, tol));
  out.push_back(make_equality("rc.coulomb_vs_imag", b_sq, -2.0 * z.imag(), tol));
  out.push_back(make_equality("rc.coulomb_vs_normalized", b_sq, na * nb * (2.0 - nsq(cx(1.0 / na) * a + (i / nb) * b)), tol));
  out.push_back(make_equality("rc.symmetrized_norm", na * na, nsq(dr) - coeff * b_sq, tol));
  out.push_back(make_inequality("rc.relative_bound", nb, 2.0 * na, tol));
  out.back().metrics["ratio"] = nb / (2.0 * na);
  out.push_back(make_equality("rc.orthogonality", inner(b - 2.0 * i * a, b).real() / b_sq, 0.0, tol));
  out.push_back(make_equality("rc.pythagoras", 4.0 * na * na, nsq(2.0 * i * a - b) + b_sq, tol));
  out.push_back(make_equality("rc.hardy", 4.0 * nsq(dr), 4.0 * nsq(remainder) + 4.0 * c * c * b_sq, tol));
  // A radial state has no spherical part: sum_j ||L_j phi||^2 = 0.
  out.push_back(make_equality("rc.hardy_gradient_form", nsq(dr), nsq(remainder) + c * c * b_sq, tol));
  stamp(out, radial_context(phi));
  return out;
}

std::vector<EqualityReport> verify_radial_coulomb(const StateField& phi, double tol) {
  const int n = phi.grid().dim;
  require_hardy_dim(n);
  const cx i{0.0, 1.0};
  const double c = (n - 2) / 2.0;
  const SingularProducts sp(phi);
  const StateField dr = grid::radial_derivative(phi);
  const StateField b = grid::divide_by_radius(phi);
  const cx ca = -i * ((n - 1) / 2.0);  // singular coefficient of A phi
  const StateField a = -i * (dr + cx((n - 1) / 2.0) * b);
  const StateField remainder = dr + cx(c) * b;

  const double na = std::sqrt(sp.norm_sq(a, ca));
  const double nb = std::sqrt(sp.norm_sq(b, 1.0));
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("verify_radial_coulomb: A phi and B phi must be nonzero");
  const double b_sq = nb * nb;
  const cx z = sp(a, b, ca, 1.0);
  const cx comm = sp(b, a, 1.0, ca) - z;
  const StateField w = cx(1.0 / na) * a + (i / nb) * b;
  const cx cw = ca / na + i / nb;
  const StateField m = 2.0 * i * a - b;
  const cx cm = 2.0 * i * ca - 1.0;
  const double coeff = (n - 1) * (n - 3) / 4.0;
  const double dr_sq = nsq(dr);
  const double grad_sq = nsq(grid::gradient(phi));
  double spherical_sq = 0.0;
  for (int j = 0; j < n; ++j) spherical_sq += nsq(grid::spherical_derivative(phi, j));

  std::vector<EqualityReport> out;
  out.push_back(make_equality("rc.coulomb_vs_commutator", b_sq, -i * comm, tol));
  out.push_back(make_equality("rc.coulomb_vs_imag", b_sq, -2.0 * z.imag(), tol));
  out.push_back(make_equality("rc.coulomb_vs_normalized", b_sq, na * nb * (2.0 - sp.norm_sq(w, cw)), tol));
  out.push_back(make_equality("rc.symmetrized_norm", na * na, dr_sq - coeff * b_sq, tol));
  out.push_back(make_inequality("rc.relative_bound", nb, 2.0 * na, tol));
  out.back().metrics["ratio"] = nb / (2.0 * na);
  out.push_back(make_equality("rc.orthogonality", sp(b - 2.0 * i * a, b, 1.0 - 2.0 * i * ca, 1.0).real() / b_sq, 0.0, tol));
  out.push_back(make_equality("rc.pythagoras", 4.0 * na * na, sp.norm_sq(m, cm) + b_sq, tol));
  const double rem_sq = sp.norm_sq(remainder, c);
  out.push_back(make_equality("rc.hardy", 4.0 * dr_sq, 4.0 * rem_sq + 4.0 * c * c * b_sq, tol));
  out.push_back(make_equality("rc.hardy_gradient_form", grad_sq - spherical_sq, rem_sq + c * c * b_sq, tol));
  stamp(out, phi.grid().describe());
  for (auto& r : out) r.context["singular_correction"] = sp.label();
  return out;
}

}  // namespace ueq::identities
