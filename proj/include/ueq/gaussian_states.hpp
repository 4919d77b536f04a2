#pragma once

// Closed-form Gaussian extremizers of the position/momentum uncertainty
// relations (coherent, squeezed and complex-squeezed), with exact moments.

#include <nlohmann/json.hpp>

#include <string>

#include "ueq/grid.hpp"

namespace ueq::states {

enum class GaussianKind { coherent, squeezed, squeezed_gen };

const char* to_string(GaussianKind k);
GaussianKind parse_kind(const std::string& name);

struct GaussianSpec {
  GaussianKind kind = GaussianKind::coherent;
  int n = 1;
  double norm = 1.0;         ///< target ||phi||
  double lambda = 1.0;       ///< ||grad phi|| / ||x phi||; 1 for coherent
  double theta = 0.0;        ///< global phase
  cx sgn_factor{-1.0, 0.0};  ///< squeezed_gen only: unit modulus, Re < 0

  /// Throws std::invalid_argument on a violated invariant.
  void validate() const;

  static GaussianSpec coherent(int n, double norm = 1.0, double theta = 0.0);
  static GaussianSpec squeezed(int n, double lambda, double norm = 1.0, double theta = 0.0);
  static GaussianSpec squeezed_gen(int n, double lambda, cx sgn_factor, double norm = 1.0, double theta = 0.0);
};

struct GaussianMoments {
  double norm_sq = 0.0;
  double x_norm_sq = 0.0;     ///< ||x phi||^2
  double grad_norm_sq = 0.0;  ///< ||grad phi||^2
  cx inner_x_grad{};          ///< (x phi | grad phi)
};

/// Exact moments from Gaussian integrals.
GaussianMoments exact_moments(const GaussianSpec& spec);

/// phi(x) = e^{i theta} c exp(s lambda |x|^2 / 2) with s = -1 (coherent, squeezed)
/// or s = sgn_factor, normalized so that ||phi|| = norm on R^n.
cx evaluate(const GaussianSpec& spec, std::span<const double> x);

/// Samples the closed form. Rejects boxes with min(a lambda, 1) L^2 < 20
/// (a = -Re s) or that under-resolve
/// it ((pi/h)^2 a / (2 lambda |s|^2) < 20); the message carries the estimate.
grid::StateField realize(const GaussianSpec& spec, const grid::GridSpec& grid);

/// Boundary-mass estimate exp(-a lambda L^2) used by realize.
double boundary_mass_estimate(const GaussianSpec& spec, double half_width);

nlohmann::json to_json(const GaussianSpec& spec);
GaussianSpec gaussian_from_json(const nlohmann::json& j);

}  // namespace ueq::states
