#pragma once

// Random smooth test states built from Hermite functions.

#include <random>
#include <vector>

#include "ueq/grid.hpp"
#include "ueq/radial.hpp"

namespace ueq::states {

/// L^2-normalized Hermite functions h_0(x), ..., h_m(x) by the stable three-term recurrence.
std::vector<double> hermite_functions(int max_degree, double x);

/// sum over multi-indices |alpha| <= max_degree of c_alpha prod_j h_{alpha_j}(x_j),
/// with c_alpha complex standard normal scaled by 2^{-|alpha|/2}.
grid::StateField random_smooth_state(const grid::GridSpec& grid, std::mt19937_64& rng, int max_degree = 8);

/// sum_k c_k r^{2k} e^{-a r^2/2}, k < terms, c_k complex normal scaled by 2^{-k},
/// a uniform in [0.7, 1.5]. Every such profile is smooth and even in r.
radial::RadialProfile random_radial_profile(std::mt19937_64& rng, int terms = 4);

}  // namespace ueq::states
