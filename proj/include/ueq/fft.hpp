#pragma once

#include <span>
#include <vector>

#include "ueq/grid.hpp"

namespace ueq::grid {

/// Fourier multipliers (i k)^order / N in FFTW's unshifted mode order, for a
/// periodic axis of length 2 L with `points` samples.
std::vector<cx> spectral_multipliers(int points, double half_width, int order);

/// Forward FFT, multiply, inverse FFT along every line parallel to `axis`.
void apply_along_axis(std::span<cx> data, const GridSpec& grid, int axis, std::span<const cx> multipliers);

}  // namespace ueq::grid
