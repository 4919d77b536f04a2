#include "ueq/radial.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace ueq::radial {

double sphere_area(int n) {
  if (n < 1) throw std::invalid_argument("sphere_area: n must be >= 1");
  return 2.0 * std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0);
}

std::shared_ptr<const RadialQuadrature> RadialQuadrature::midpoint(int dim, double R, int points) {
  if (dim < 1) throw std::invalid_argument("radial quadrature: dim must be >= 1");
  if (!(R > 0.0)) throw std::invalid_argument("radial quadrature: R must be positive");
  if (points < 1) throw std::invalid_argument("radial quadrature: points must be >= 1");
  auto q = std::make_shared<RadialQuadrature>();
  q->dim = dim;
  const double dr = R / points;
  const double area = sphere_area(dim);
  q->nodes.resize(static_cast<std::size_t>(points));
  q->weights.resize(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    const double r = (k + 0.5) * dr;
    q->nodes[static_cast<std::size_t>(k)] = r;
    q->weights[static_cast<std::size_t>(k)] = area * std::pow(r, dim - 1) * dr;
  }
  std::ostringstream os;
  os.precision(17);
  os << "midpoint(n=" << dim << ", R=" << R << ", points=" << points << ")";
  q->description = os.str();
  return q;
}

std::shared_ptr<const RadialQuadrature> RadialQuadrature::log_midpoint(int dim, double rmin, double rmax,
                                                                       int points) {
  if (dim < 1) throw std::invalid_argument("radial quadrature: dim must be >= 1");
  if (!(rmin > 0.0) || !(rmax > rmin)) throw std::invalid_argument("radial quadrature: need 0 < rmin < rmax");
  if (points < 1) throw std::invalid_argument("radial quadrature: points must be >= 1");
  auto q = std::make_shared<RadialQuadrature>();
  q->dim = dim;
  const double t0 = std::log(rmin);
  const double dt = (std::log(rmax) - t0) / points;
  const double area = sphere_area(dim);
  q->nodes.resize(static_cast<std::size_t>(points));
  q->weights.resize(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    const double r = std::exp(t0 + (k + 0.5) * dt);
    // r^{n-1} dr = r^n dt
    q->nodes[static_cast<std::size_t>(k)] = r;
    q->weights[static_cast<std::size_t>(k)] = area * std::pow(r, dim) * dt;
  }
  std::ostringstream os;
  os.precision(17);
  os << "log_midpoint(n=" << dim << ", rmin=" << rmin << ", rmax=" << rmax << ", points=" << points << ")";
  q->description = os.str();
  return q;
}

RadialField::RadialField(std::shared_ptr<const RadialQuadrature> quad, std::vector<cx> values)
    : quad_(std::move(quad)), values_(std::move(values)) {
  if (!quad_) throw std::invalid_argument("RadialField: missing quadrature");
  if (values_.size() != quad_->size()) throw ShapeMismatch("RadialField: value count does not match quadrature");
}

namespace {
void require_same(const RadialField& a, const RadialField& b) {
  if (a.quadrature_ptr() != b.quadrature_ptr()) throw ShapeMismatch("radial fields on different quadratures");
}
}  // namespace

RadialField operator+(const RadialField& a, const RadialField& b) {
  require_same(a, b);
  std::vector<cx> v(a.values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values_[i] + b.values_[i];
  return RadialField(a.quad_, std::move(v));
}

RadialField operator-(const RadialField& a, const RadialField& b) {
  require_same(a, b);
  std::vector<cx> v(a.values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values_[i] - b.values_[i];
  return RadialField(a.quad_, std::move(v));
}

RadialField operator*(cx c, const RadialField& a) {
  std::vector<cx> v(a.values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * a.values_[i];
  return RadialField(a.quad_, std::move(v));
}

cx inner(const RadialField& a, const RadialField& b) {
  require_same(a, b);
  cx s{};
  const auto& w = a.quad_->weights;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * a.values_[i] * std::conj(b.values_[i]);
  return s;
}

RadialProfile gaussian_polynomial(std::vector<cx> coeffs, double a, std::string name) {
  if (coeffs.empty()) throw std::invalid_argument("gaussian_polynomial: no coefficients");
  if (!(a > 0.0)) throw std::invalid_argument("gaussian_polynomial: decay rate must be positive");
  auto value = [coeffs, a](double r) {
    cx p{};
    double rk = 1.0;
    for (const auto& c : coeffs) {
      p += c * rk;
      rk *= r * r;
    }
    return p * std::exp(-a * r * r / 2.0);
  };
  auto deriv = [coeffs, a](double r) {
    // d/dr [sum c_k r^{2k}] e^{-a r^2/2} - a r sum c_k r^{2k} e^{-a r^2/2}
    cx p{}, dp{};
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      p += coeffs[k] * std::pow(r, 2.0 * static_cast<double>(k));
      if (k > 0) dp += coeffs[k] * (2.0 * static_cast<double>(k)) * std::pow(r, 2.0 * static_cast<double>(k) - 1.0);
    }
    return (dp - a * r * p) * std::exp(-a * r * r / 2.0);
  };
  return {std::move(name), value, deriv};
}

RadialProfile gaussian() { return gaussian_polynomial({1.0}, 1.0, "gaussian"); }

RadialProfile odd_gaussian() {
  return {"odd_gaussian", [](double r) -> cx { return r * std::exp(-r * r / 2.0); },
          [](double r) -> cx { return (1.0 - r * r) * std::exp(-r * r / 2.0); }};
}

RadialProfile power(double p) {
  std::ostringstream os;
  os << "power(" << p << ")";
  return {os.str(), [p](double r) -> cx { return std::pow(r, p); },
          [p](double r) -> cx { return p * std::pow(r, p - 1.0); }};
}

double smoothstep(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double smoothstep_derivative(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return 30.0 * t * t * (1.0 - t) * (1.0 - t);
}

RadialProfile annulus_power(int n, double R) {
  if (!(R > 1.0)) throw std::invalid_argument("annulus_power: R must exceed 1");
  const double log_r = std::log(R);
  const double p = -n / 2.0;
  auto chi = [log_r](double t) { return smoothstep(t) * (1.0 - smoothstep(t - log_r)); };
  auto dchi = [log_r](double t) {
    return smoothstep_derivative(t) * (1.0 - smoothstep(t - log_r)) -
           smoothstep(t) * smoothstep_derivative(t - log_r);
  };
  std::ostringstream os;
  os << "annulus_power(n=" << n << ", R=" << R << ")";
  return {os.str(), [p, chi](double r) -> cx { return std::pow(r, p) * chi(std::log(r)); },
          [p, chi, dchi](double r) -> cx {
            const double t = std::log(r);
            // d/dr [r^p chi(log r)] = r^{p-1} (p chi + chi')
            return std::pow(r, p - 1.0) * (p * chi(t) + dchi(t));
          }};
}

RadialState::RadialState(RadialProfile profile, std::shared_ptr<const RadialQuadrature> quad)
    : profile_(std::move(profile)), quad_(std::move(quad)) {
  if (!quad_) throw std::invalid_argument("RadialState: missing quadrature");
}

RadialField RadialState::map(const std::function<cx(double, cx, cx)>& g) const {
  std::vector<cx> v(quad_->size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double r = quad_->nodes[i];
    v[i] = g(r, profile_.value(r), profile_.derivative(r));
  }
  return RadialField(quad_, std::move(v));
}

RadialField RadialState::values() const {
  return map([](double, cx f, cx) { return f; });
}

RadialField RadialState::derivative() const {
  return map([](double, cx, cx df) { return df; });
}

double checked_mass(const RadialProfile& profile, int dim) {
  constexpr int kPointsPerDecade = 2000;
  std::vector<double> mass;
  for (int k = 1; k <= 4; ++k) {
    const auto q = RadialQuadrature::log_midpoint(dim, std::pow(10.0, -k), std::pow(10.0, k), 2 * k * kPointsPerDecade);
    double m = 0.0;
    for (std::size_t i = 0; i < q->size(); ++i) m += q->weights[i] * std::norm(profile.value(q->nodes[i]));
    if (!std::isfinite(m)) throw NotNormalizable(profile.name + ": mass is not finite");
    mass.push_back(m);
  }
  const double d1 = mass[2] - mass[1];
  const double d2 = mass[3] - mass[2];
  if (d2 > 1e-10 * mass[3] && d2 > 0.25 * d1) {
    std::ostringstream os;
    os << profile.name << ": L^2 mass keeps growing (" << mass[1] << ", " << mass[2] << ", " << mass[3]
       << " over r in [1e-k, 1e k], k = 2, 3, 4); the profile is not square integrable";
    throw NotNormalizable(os.str());
  }
  return mass.back();
}

}  // namespace ueq::radial
