#include "ueq/hermite.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ueq::states {

std::vector<double> hermite_functions(int max_degree, double x) {
  if (max_degree < 0) throw std::invalid_argument("hermite_functions: negative degree");
  std::vector<double> h(static_cast<std::size_t>(max_degree) + 1);
  h[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-x * x / 2.0);
  if (max_degree >= 1) h[1] = std::sqrt(2.0) * x * h[0];
  for (int k = 2; k <= max_degree; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    h[ku] = std::sqrt(2.0 / k) * x * h[ku - 1] - std::sqrt((k - 1.0) / k) * h[ku - 2];
  }
  return h;
}

grid::StateField random_smooth_state(const grid::GridSpec& grid, std::mt19937_64& rng, int max_degree) {
  grid.validate();
  const auto m = static_cast<std::size_t>(max_degree) + 1;
  const auto dim = static_cast<std::size_t>(grid.dim);
  std::normal_distribution<double> gauss;

  // Coefficients over all multi-indices with |alpha| <= max_degree, generated in a fixed order.
  struct Term {
    std::vector<std::size_t> alpha;
    cx c;
  };
  std::vector<Term> terms;
  std::vector<std::size_t> alpha(dim, 0);
  while (true) {
    std::size_t total = 0;
    for (auto a : alpha) total += a;
    if (total <= static_cast<std::size_t>(max_degree)) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      terms.push_back({alpha, cx(re, im) * std::pow(2.0, -0.5 * static_cast<double>(total))});
    }
    std::size_t a = 0;
    while (a < dim && ++alpha[a] == m) alpha[a++] = 0;
    if (a == dim) break;
  }

  std::vector<std::vector<double>> table(static_cast<std::size_t>(grid.points));
  for (int i = 0; i < grid.points; ++i) table[static_cast<std::size_t>(i)] = hermite_functions(max_degree, grid.coordinate(i));

  grid::StateField out(grid);
  auto v = out.values();
  std::vector<const std::vector<double>*> rows(dim);
  for (std::size_t flat = 0; flat < v.size(); ++flat) {
    for (std::size_t j = 0; j < dim; ++j) {
      rows[j] = &table[static_cast<std::size_t>(grid.axis_index(flat, static_cast<int>(j)))];
    }
    cx acc{};
    for (const auto& t : terms) {
      double p = 1.0;
      for (std::size_t j = 0; j < dim; ++j) p *= (*rows[j])[t.alpha[j]];
      acc += t.c * p;
    }
    v[flat] = acc;
  }
  return out;
}

radial::RadialProfile random_radial_profile(std::mt19937_64& rng, int terms) {
  if (terms < 1) throw std::invalid_argument("random_radial_profile: terms must be >= 1");
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> rate(0.7, 1.5);
  std::vector<cx> c(static_cast<std::size_t>(terms));
  for (int k = 0; k < terms; ++k) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    c[static_cast<std::size_t>(k)] = cx(re, im) * std::pow(2.0, -k);
  }
  return radial::gaussian_polynomial(std::move(c), rate(rng), "random_radial");
}

}  // namespace ueq::states
