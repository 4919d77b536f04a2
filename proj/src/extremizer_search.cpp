#include "ueq/extremizer_search.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "ueq/gaussian_states.hpp"
#include "ueq/hermite.hpp"
#include "ueq/identity_suite.hpp"
#include "ueq/operators.hpp"
#include "ueq/radial.hpp"

namespace ueq::search {

namespace {

using grid::StateField;

double nsq(const StateField& f) { return grid::l2_inner(f, f).real(); }

StateField times_r_squared(const StateField& phi) {
  const auto r = grid::radius_values(phi.grid());
  StateField out = phi;
  auto o = out.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] *= r[i] * r[i];
  return out;
}

// D^* D phi = -sum_j D_j D_j phi for the antisymmetric first derivative D_j.
StateField dd_laplacian(const StateField& phi) {
  StateField out(phi.grid());
  for (int j = 0; j < phi.grid().dim; ++j) out -= grid::derivative(grid::derivative(phi, j), j);
  return out;
}

double grad_sq(const StateField& phi) {
  double s = 0.0;
  for (int j = 0; j < phi.grid().dim; ++j) s += nsq(grid::derivative(phi, j));
  return s;
}

double x_sq(const StateField& phi) { return grid::l2_inner(times_r_squared(phi), phi).real(); }

void normalize(StateField& phi) {
  const double n = std::sqrt(nsq(phi));
  if (n == 0.0) throw std::invalid_argument("search: state vanished");
  phi = cx(1.0 / n) * phi;
}

void require_desk_scale(const grid::GridSpec& g) {
  g.validate();
  if (g.dim > 2) throw std::invalid_argument("search: n <= 2 only");
}

using Functional = double (*)(const StateField&);
using Gradient = StateField (*)(const StateField&);

SearchResult descend(const grid::GridSpec& grid, std::uint64_t seed, const SearchOptions& opts,
                     const std::optional<StateField>& start, Functional f, Gradient grad) {
  require_desk_scale(grid);
  if (!(opts.step > 0.0) || !(opts.backtrack > 0.0 && opts.backtrack < 1.0) || opts.max_iters < 0) {
    throw std::invalid_argument("search: invalid options");
  }
  StateField phi = [&] {
    if (start) {
      grid::require_same_grid(start->grid(), grid);
      return *start;
    }
    std::mt19937_64 rng(seed);
    return states::random_smooth_state(grid, rng, opts.start_degree);
  }();
  normalize(phi);

  SearchResult res{phi, f(phi), 0, false, "", {}, 0.0, 0.0};
  res.trace.push_back({0, res.value, 0.0});
  double alpha = opts.step;
  for (int k = 1; k <= opts.max_iters; ++k) {
    const StateField g = grad(phi);
    const double g_sq = nsq(g);
    if (std::sqrt(g_sq) <= opts.gradient_tol) {
      res.converged = true;
      res.message = "gradient below tolerance";
      break;
    }
    double trial = std::min(opts.step, 2.0 * alpha);
    bool accepted = false;
    StateField next = phi;
    double value = res.value;
    for (int b = 0; b < opts.max_backtracks; ++b) {
      next = phi - cx(trial) * g;
      normalize(next);
      value = f(next);
      // J(phi - t G) ~ J(phi) - 2 t ||G||^2
      if (value <= res.value - opts.armijo * 2.0 * trial * g_sq) {
        accepted = true;
        break;
      }
      trial *= opts.backtrack;
    }
    if (!accepted) {
      res.converged = true;
      res.message = "no sufficient decrease (line search exhausted)";
      break;
    }
    const double change = std::abs(res.value - value);
    phi = std::move(next);
    alpha = trial;
    const double previous = res.value;
    res.value = value;
    res.iterations = k;
    res.trace.push_back({k, value, trial});
    if (change <= opts.rel_tol * std::abs(previous)) {
      res.converged = true;
      res.message = "relative change below tolerance";
      break;
    }
  }
  if (!res.converged) res.message = "max_iters reached without convergence";
  res.state = std::move(phi);
  res.lambda_est = std::sqrt(grad_sq(res.state) / x_sq(res.state));
  return res;
}

}  // namespace

double sum_functional(const StateField& phi) { return (x_sq(phi) + grad_sq(phi)) / nsq(phi); }

double product_functional(const StateField& phi) {
  return 2.0 * std::sqrt(x_sq(phi) * grad_sq(phi)) / nsq(phi);
}

StateField sum_gradient(const StateField& phi) {
  const double n = nsq(phi);
  const double j = sum_functional(phi);
  return cx(1.0 / n) * (times_r_squared(phi) + dd_laplacian(phi) - cx(j) * phi);
}

StateField product_gradient(const StateField& phi) {
  const double n = nsq(phi);
  const double x2 = x_sq(phi);
  const double p2 = grad_sq(phi);
  const double k = 2.0 * std::sqrt(x2 * p2) / n;
  return cx(k) * (cx(0.5 / x2) * times_r_squared(phi) + cx(0.5 / p2) * dd_laplacian(phi) - cx(1.0 / n) * phi);
}

double fidelity(const StateField& a, const StateField& b) {
  return std::abs(grid::l2_inner(a, b)) / std::sqrt(nsq(a) * nsq(b));
}

SearchResult minimize_sum_functional(const grid::GridSpec& grid, std::uint64_t seed, const SearchOptions& opts,
                                     const std::optional<StateField>& start) {
  SearchResult res = descend(grid, seed, opts, start, &sum_functional, &sum_gradient);
  const auto coherent = states::realize(states::GaussianSpec::coherent(grid.dim), grid);
  res.fidelity = fidelity(res.state, coherent);
  return res;
}

SearchResult minimize_product_functional(const grid::GridSpec& grid, std::uint64_t seed, const SearchOptions& opts,
                                         const std::optional<StateField>& start) {
  SearchResult res = descend(grid, seed, opts, start, &product_functional, &product_gradient);
  const auto matched = states::realize(states::GaussianSpec::squeezed(grid.dim, res.lambda_est), grid);
  res.fidelity = fidelity(res.state, matched);
  return res;
}

void write_trace_csv(const SearchResult& result, std::ostream& os) {
  os << "iteration,value,step\n";
  os.precision(17);
  for (const auto& t : result.trace) os << t.iteration << ',' << t.value << ',' << t.step << '\n';
}

ProbeResult probe_nonattainment(int n, std::span<const double> R_values, int points_per_log_unit) {
  if (n < 3) throw std::invalid_argument("probe_nonattainment: n must be >= 3");
  if (R_values.empty()) throw std::invalid_argument("probe_nonattainment: no R values");
  if (points_per_log_unit < 10) throw std::invalid_argument("probe_nonattainment: too few quadrature points");
  ProbeResult out;
  out.n = n;
  for (double R : R_values) {
    if (!(R > 1.0)) throw std::invalid_argument("probe_nonattainment: every R must exceed 1");
    const double rmax = std::exp(1.0) * R;
    const int points = static_cast<int>(std::ceil(points_per_log_unit * std::log(rmax)));
    const auto quad = radial::RadialQuadrature::log_midpoint(n, 1.0, rmax, points);
    const radial::RadialState state(radial::annulus_power(n, R), quad);
    const auto reps = identities::verify_dilation_gap(state, 1e-10);
    ProbeRow row;
    row.R = R;
    row.rho = reps.front().metrics.at("ratio");
    row.gap = reps.front().metrics.at("gap");
    row.norm_sq = inner(state.values(), state.values()).real();
    out.rows.push_back(row);
  }
  out.all_above_one = std::all_of(out.rows.begin(), out.rows.end(), [](const ProbeRow& r) { return r.rho > 1.0; });
  out.strictly_decreasing = true;
  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    if (out.rows[i].R > out.rows[i - 1].R && !(out.rows[i].rho < out.rows[i - 1].rho)) out.strictly_decreasing = false;
  }
  double num = 0.0, den = 0.0;
  for (const auto& r : out.rows) {
    const double x = 1.0 / std::log(r.R);
    num += x * (r.rho - 1.0);
    den += x * x;
  }
  out.fitted_c = num / den;
  return out;
}

void probe_uncut_profile(int n) {
  if (n < 3) throw std::invalid_argument("probe_uncut_profile: n must be >= 3");
  radial::checked_mass(radial::power(-n / 2.0), n);
  throw std::logic_error("probe_uncut_profile: r^{-n/2} unexpectedly passed the mass check");
}

}  // namespace ueq::search
