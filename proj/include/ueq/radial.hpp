#pragma once

// One-dimensional radial quadrature for radial functions on R^n, with the
// measure |S^{n-1}| r^{n-1} dr folded into the weights.

#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ueq/complex_space.hpp"

namespace ueq::radial {

/// Surface area of the unit sphere in R^n.
double sphere_area(int n);

struct RadialQuadrature {
  int dim = 3;
  std::vector<double> nodes;
  std::vector<double> weights;

  /// Midpoint rule on (0, R]; spectrally accurate for even integrands that decay before R.
  static std::shared_ptr<const RadialQuadrature> midpoint(int dim, double R, int points);
  /// Midpoint rule in t = log r on [rmin, rmax].
  static std::shared_ptr<const RadialQuadrature> log_midpoint(int dim, double rmin, double rmax, int points);

  std::size_t size() const { return nodes.size(); }
  std::string describe() const { return description; }
  std::string description;
};

/// Samples of a radial function at the nodes of a shared quadrature.
class RadialField {
 public:
  RadialField(std::shared_ptr<const RadialQuadrature> quad, std::vector<cx> values);

  const RadialQuadrature& quadrature() const { return *quad_; }
  const std::shared_ptr<const RadialQuadrature>& quadrature_ptr() const { return quad_; }
  std::span<const cx> values() const { return values_; }

  friend RadialField operator+(const RadialField& a, const RadialField& b);
  friend RadialField operator-(const RadialField& a, const RadialField& b);
  friend RadialField operator*(cx c, const RadialField& a);
  /// sum_k w_k a_k conj(b_k).
  friend cx inner(const RadialField& a, const RadialField& b);

 private:
  std::shared_ptr<const RadialQuadrature> quad_;
  std::vector<cx> values_;
};

/// A radial profile f(r) together with its exact derivative f'(r).
struct RadialProfile {
  std::string name;
  std::function<cx(double)> value;
  std::function<cx(double)> derivative;
};

/// sum_k c_k r^{2k} e^{-a r^2 / 2}.
RadialProfile gaussian_polynomial(std::vector<cx> coeffs, double a = 1.0, std::string name = "gaussian_polynomial");
/// e^{-r^2/2}.
RadialProfile gaussian();
/// r e^{-r^2/2}.
RadialProfile odd_gaussian();
/// r^p on (0, inf), no cutoff.
RadialProfile power(double p);
/// r^{-n/2} chi(log r) with chi rising over [1, e] and falling over [R, eR]
/// (quintic smoothsteps in log r).
RadialProfile annulus_power(int n, double R);

/// Quintic smoothstep 6t^5 - 15t^4 + 10t^3 clamped to [0, 1], and its derivative.
double smoothstep(double t);
double smoothstep_derivative(double t);

/// A radial state: a profile evaluated on a quadrature.
class RadialState {
 public:
  RadialState(RadialProfile profile, std::shared_ptr<const RadialQuadrature> quad);

  int dim() const { return quad_->dim; }
  const RadialProfile& profile() const { return profile_; }
  const RadialQuadrature& quadrature() const { return *quad_; }

  /// Field g(r, f(r), f'(r)) sampled at the nodes.
  RadialField map(const std::function<cx(double r, cx f, cx df)>& g) const;
  RadialField values() const;
  RadialField derivative() const;

 private:
  RadialProfile profile_;
  std::shared_ptr<const RadialQuadrature> quad_;
};

/// Thrown for profiles whose L^2 mass does not converge.
class NotNormalizable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Integrates |f|^2 r^{n-1} over widening log ranges [10^-k, 10^k]; throws
/// NotNormalizable when the mass keeps growing by a non-decaying increment.
double checked_mass(const RadialProfile& profile, int dim);

}  // namespace ueq::radial
