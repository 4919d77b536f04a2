#include "ueq/gaussian_states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ueq::states {

const char* to_string(GaussianKind k) {
  switch (k) {
    case GaussianKind::coherent:
      return "coherent";
    case GaussianKind::squeezed:
      return "squeezed";
    case GaussianKind::squeezed_gen:
      return "squeezed_gen";
  }
  return "?";
}

GaussianKind parse_kind(const std::string& name) {
  if (name == "coherent") return GaussianKind::coherent;
  if (name == "squeezed") return GaussianKind::squeezed;
  if (name == "squeezed_gen") return GaussianKind::squeezed_gen;
  throw std::invalid_argument("unknown Gaussian kind '" + name + "'");
}

void GaussianSpec::validate() const {
  if (n < 1) throw std::invalid_argument("GaussianSpec: n must be >= 1");
  if (!(norm > 0.0) || !std::isfinite(norm)) throw std::invalid_argument("GaussianSpec: norm must be positive");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("GaussianSpec: lambda must be positive");
  if (!std::isfinite(theta)) throw std::invalid_argument("GaussianSpec: theta must be finite");
  if (kind == GaussianKind::coherent && lambda != 1.0) {
    throw std::invalid_argument("GaussianSpec: a coherent state has lambda = 1");
  }
  if (kind == GaussianKind::squeezed_gen) {
    if (std::abs(std::abs(sgn_factor) - 1.0) > 1e-12) {
      throw std::invalid_argument("GaussianSpec: sgn_factor must have unit modulus");
    }
    if (!(sgn_factor.real() < 0.0)) {
      throw std::invalid_argument("GaussianSpec: sgn_factor needs a negative real part (normalizability)");
    }
  }
}

GaussianSpec GaussianSpec::coherent(int n, double norm, double theta) {
  GaussianSpec s;
  s.kind = GaussianKind::coherent;
  s.n = n;
  s.norm = norm;
  s.theta = theta;
  s.validate();
  return s;
}

GaussianSpec GaussianSpec::squeezed(int n, double lambda, double norm, double theta) {
  GaussianSpec s;
  s.kind = GaussianKind::squeezed;
  s.n = n;
  s.lambda = lambda;
  s.norm = norm;
  s.theta = theta;
  s.validate();
  return s;
}

GaussianSpec GaussianSpec::squeezed_gen(int n, double lambda, cx sgn_factor, double norm, double theta) {
  GaussianSpec s;
  s.kind = GaussianKind::squeezed_gen;
  s.n = n;
  s.lambda = lambda;
  s.sgn_factor = sgn_factor;
  s.norm = norm;
  s.theta = theta;
  s.validate();
  return s;
}

namespace {
// Exponent factor s in exp(s lambda |x|^2 / 2).
cx exponent_sign(const GaussianSpec& spec) {
  return spec.kind == GaussianKind::squeezed_gen ? spec.sgn_factor : cx(-1.0, 0.0);
}
}  // namespace

GaussianMoments exact_moments(const GaussianSpec& spec) {
  spec.validate();
  // |phi|^2 = c^2 exp(-a lambda |x|^2), a = -Re s. Per axis, with b = a lambda:
  // int x^2 e^{-b x^2} / int e^{-b x^2} = 1/(2b).
  const cx s = exponent_sign(spec);
  const double a = -s.real();
  const double lam = spec.lambda;
  const double nsq = spec.norm * spec.norm;
  const double n = spec.n;
  GaussianMoments m;
  m.norm_sq = nsq;
  m.x_norm_sq = n * nsq / (2.0 * a * lam);
  // grad phi = s lambda x phi, so ||grad phi||^2 = lambda^2 ||x phi||^2 and
  // (x phi | grad phi) = conj(s) lambda ||x phi||^2.
  m.grad_norm_sq = lam * lam * m.x_norm_sq;
  m.inner_x_grad = std::conj(s) * lam * m.x_norm_sq;
  return m;
}

cx evaluate(const GaussianSpec& spec, std::span<const double> x) {
  const cx s = exponent_sign(spec);
  const double a = -s.real();
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  const double c = spec.norm * std::pow(a * spec.lambda / std::numbers::pi, spec.n / 4.0);
  return std::polar(c, spec.theta) * std::exp(s * spec.lambda * r2 / 2.0);
}

double boundary_mass_estimate(const GaussianSpec& spec, double half_width) {
  const double a = -exponent_sign(spec).real();
  return std::exp(-a * spec.lambda * half_width * half_width);
}

grid::StateField realize(const GaussianSpec& spec, const grid::GridSpec& grid) {
  spec.validate();
  grid.validate();
  if (grid.dim != spec.n) throw std::invalid_argument("realize: grid dimension differs from spec.n");
  const cx s = exponent_sign(spec);
  const double a = -s.real();
  const double decay = std::min(a * spec.lambda, 1.0) * grid.half_width * grid.half_width;
  if (decay < 20.0) {
    std::ostringstream os;
    os << "realize: box too small for " << to_string(spec.kind) << " state (min(a lambda, 1) L^2 = " << decay
       << " < 20, boundary mass ~ " << boundary_mass_estimate(spec, grid.half_width) << ")";
    throw std::invalid_argument(os.str());
  }
  // |Fourier transform|^2 decays like exp(-a k^2 / (lambda |s|^2)); demand e^{-20} at k = pi/h.
  const double kmax = std::numbers::pi / grid.spacing();
  const double resolution = kmax * kmax * a / (spec.lambda * std::norm(s));
  if (resolution < 20.0) {
    std::ostringstream os;
    os << "realize: grid too coarse for " << to_string(spec.kind) << " state (spectral tail exponent "
       << resolution << " < 20)";
    throw std::invalid_argument(os.str());
  }
  return grid::StateField::sample(grid, [&](std::span<const double> x) { return evaluate(spec, x); });
}

nlohmann::json to_json(const GaussianSpec& spec) {
  return {{"kind", to_string(spec.kind)}, {"n", spec.n},         {"norm", spec.norm},
          {"lambda", spec.lambda},        {"theta", spec.theta}, {"sgn_factor", {spec.sgn_factor.real(), spec.sgn_factor.imag()}}};
}

GaussianSpec gaussian_from_json(const nlohmann::json& j) {
  GaussianSpec s;
  s.kind = parse_kind(j.at("kind").get<std::string>());
  s.n = j.value("n", 1);
  s.norm = j.value("norm", 1.0);
  s.lambda = j.value("lambda", 1.0);
  s.theta = j.value("theta", 0.0);
  if (j.contains("sgn_factor")) {
    const auto& f = j.at("sgn_factor");
    s.sgn_factor = {f.at(0).get<double>(), f.at(1).get<double>()};
  }
  s.validate();
  return s;
}

}  // namespace ueq::states
