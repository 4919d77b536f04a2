#pragma once

// Variational recovery of uncertainty extremizers: projected gradient descent
// on the sphere ||phi|| = 1 for the sum and product functionals, and a probe of
// the non-attained dilation bound on annular radial states.

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ueq/grid.hpp"

namespace ueq::search {

struct SearchOptions {
  double step = 0.1;            ///< initial (and maximal) trial step
  double backtrack = 0.5;       ///< step reduction factor on a rejected trial
  int max_iters = 5000;
  double rel_tol = 1e-10;       ///< stop when |J_k - J_{k+1}| <= rel_tol |J_k|
  double armijo = 1e-4;         ///< sufficient-decrease constant
  double gradient_tol = 1e-10;  ///< stop when ||G|| <= gradient_tol
  int max_backtracks = 60;
  int start_degree = 8;         ///< Hermite degree of random starts
};

struct TracePoint {
  int iteration = 0;
  double value = 0.0;
  double step = 0.0;
};

struct SearchResult {
  grid::StateField state;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string message;
  std::vector<TracePoint> trace;
  double fidelity = 0.0;    ///< vs coherent (sum) or squeezed(lambda_est) (product)
  double lambda_est = 0.0;  ///< ||grad phi|| / ||x phi||
};

/// J(phi) = (||x phi||^2 + ||grad phi||^2) / ||phi||^2.
double sum_functional(const grid::StateField& phi);
/// K(phi) = 2 ||x phi|| ||grad phi|| / ||phi||^2.
double product_functional(const grid::StateField& phi);

/// G with J(phi + eta) = J(phi) + 2 Re(G|eta) + O(eta^2); likewise for K.
/// -Laplacian is applied as D^* D with the grid's first derivative D, so the
/// gradient is exact for the discrete functional.
grid::StateField sum_gradient(const grid::StateField& phi);
grid::StateField product_gradient(const grid::StateField& phi);

/// |(a|b)| / (||a|| ||b||).
double fidelity(const grid::StateField& a, const grid::StateField& b);

/// Starts from `start` if given, else from a seeded random Hermite mixture.
/// Needs n <= 2.
SearchResult minimize_sum_functional(const grid::GridSpec& grid, std::uint64_t seed, const SearchOptions& opts = {},
                                     const std::optional<grid::StateField>& start = std::nullopt);
SearchResult minimize_product_functional(const grid::GridSpec& grid, std::uint64_t seed,
                                         const SearchOptions& opts = {},
                                         const std::optional<grid::StateField>& start = std::nullopt);

/// CSV with header iteration,value,step.
void write_trace_csv(const SearchResult& result, std::ostream& os);

struct ProbeRow {
  double R = 0.0;
  double rho = 0.0;      ///< ||x.grad phi_R||^2 / ((n/2)^2 ||phi_R||^2)
  double gap = 0.0;      ///< ||x.grad phi_R + (n/2) phi_R||^2
  double norm_sq = 0.0;  ///< ||phi_R||^2
};

struct ProbeResult {
  int n = 3;
  std::vector<ProbeRow> rows;
  double fitted_c = 0.0;  ///< least squares fit of rho - 1 = c / log R
  bool strictly_decreasing = false;
  bool all_above_one = false;
};

/// rho(R) for the smoothed annulus profiles r^{-n/2} chi(log r) supported in
/// [1, eR], on a log-uniform midpoint quadrature with `points_per_log_unit`
/// nodes per unit of log r. Rejects R <= 1 and n < 3.
ProbeResult probe_nonattainment(int n, std::span<const double> R_values, int points_per_log_unit = 4000);

/// The uncut profile r^{-n/2}: always throws radial::NotNormalizable.
void probe_uncut_profile(int n);

}  // namespace ueq::search
