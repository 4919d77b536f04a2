#include "ueq/operators.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "ueq/fft.hpp"

namespace ueq::grid {

namespace {

void require_origin_free(const GridSpec& g, const char* what) {
  if (!g.origin_free()) {
    throw std::invalid_argument(std::string(what) + ": the origin is a grid sample; use a nonzero offset");
  }
}

void require_axis(const GridSpec& g, int axis) {
  if (axis < 0 || axis >= g.dim) throw std::invalid_argument("axis out of range");
}

// Periodic stencil sum along `axis`: out_i = sum_k c_k f_{i+k} / scale.
StateField stencil_apply(const StateField& f, int axis, std::span<const std::pair<int, double>> taps, double scale) {
  const GridSpec& g = f.grid();
  StateField out(g);
  const auto n = static_cast<std::size_t>(g.points);
  const std::size_t stride = g.stride(axis);
  const std::size_t block = stride * n;
  const auto in = f.values();
  auto o = out.values();
  for (std::size_t base = 0; base < in.size(); base += block) {
    for (std::size_t s = 0; s < stride; ++s) {
      const std::size_t start = base + s;
      for (std::size_t i = 0; i < n; ++i) {
        cx acc{};
        for (const auto& [k, c] : taps) {
          const std::size_t j = (i + n + static_cast<std::size_t>(k + static_cast<int>(n))) % n;
          acc += c * in[start + j * stride];
        }
        o[start + i * stride] = acc / scale;
      }
    }
  }
  return out;
}

std::vector<double> axis_values(const GridSpec& g, int axis) {
  std::vector<double> x(g.size());
  for (std::size_t flat = 0; flat < x.size(); ++flat) x[flat] = g.coordinate(g.axis_index(flat, axis));
  return x;
}

}  // namespace

StateField derivative(const StateField& f, int axis, int order) {
  const GridSpec& g = f.grid();
  require_axis(g, axis);
  if (order != 1 && order != 2) throw std::invalid_argument("derivative order must be 1 or 2");
  const double h = g.spacing();
  switch (g.scheme) {
    case Scheme::spectral_periodic: {
      StateField out = f;
      const auto m = spectral_multipliers(g.points, g.half_width, order);
      apply_along_axis(out.values(), g, axis, m);
      return out;
    }
    case Scheme::central_diff_2: {
      if (order == 1) {
        const std::pair<int, double> taps[] = {{-1, -1.0}, {1, 1.0}};
        return stencil_apply(f, axis, taps, 2.0 * h);
      }
      const std::pair<int, double> taps[] = {{-1, 1.0}, {0, -2.0}, {1, 1.0}};
      return stencil_apply(f, axis, taps, h * h);
    }
    case Scheme::central_diff_4: {
      if (order == 1) {
        const std::pair<int, double> taps[] = {{-2, 1.0}, {-1, -8.0}, {1, 8.0}, {2, -1.0}};
        return stencil_apply(f, axis, taps, 12.0 * h);
      }
      const std::pair<int, double> taps[] = {{-2, -1.0}, {-1, 16.0}, {0, -30.0}, {1, 16.0}, {2, -1.0}};
      return stencil_apply(f, axis, taps, 12.0 * h * h);
    }
  }
  throw std::logic_error("unhandled scheme");
}

VectorField gradient(const StateField& f) {
  std::vector<StateField> c;
  c.reserve(static_cast<std::size_t>(f.grid().dim));
  for (int j = 0; j < f.grid().dim; ++j) c.push_back(derivative(f, j, 1));
  return VectorField(std::move(c));
}

StateField neg_laplacian(const StateField& f) {
  StateField out(f.grid());
  for (int j = 0; j < f.grid().dim; ++j) out -= derivative(f, j, 2);
  return out;
}

VectorField position(const StateField& f) {
  std::vector<StateField> c;
  for (int j = 0; j < f.grid().dim; ++j) {
    StateField comp = f;
    const auto x = axis_values(f.grid(), j);
    auto v = comp.values();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= x[i];
    c.push_back(std::move(comp));
  }
  return VectorField(std::move(c));
}

StateField x_dot_grad(const StateField& f) {
  StateField out(f.grid());
  auto o = out.values();
  for (int j = 0; j < f.grid().dim; ++j) {
    const StateField d = derivative(f, j, 1);
    const auto x = axis_values(f.grid(), j);
    for (std::size_t i = 0; i < o.size(); ++i) o[i] += x[i] * d[i];
  }
  return out;
}

std::vector<double> radius_values(const GridSpec& grid) {
  std::vector<double> r2(grid.size(), 0.0);
  for (int j = 0; j < grid.dim; ++j) {
    const auto x = axis_values(grid, j);
    for (std::size_t i = 0; i < r2.size(); ++i) r2[i] += x[i] * x[i];
  }
  for (auto& v : r2) v = std::sqrt(v);
  return r2;
}

StateField radial_derivative(const StateField& f) {
  require_origin_free(f.grid(), "radial derivative");
  const auto r = radius_values(f.grid());
  StateField out = x_dot_grad(f);
  auto o = out.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] /= r[i];
  return out;
}

StateField spherical_derivative(const StateField& f, int axis) {
  require_origin_free(f.grid(), "spherical derivative");
  require_axis(f.grid(), axis);
  const auto r = radius_values(f.grid());
  const auto x = axis_values(f.grid(), axis);
  StateField out = derivative(f, axis, 1);
  const StateField dr = radial_derivative(f);
  auto o = out.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] -= x[i] / r[i] * dr[i];
  return out;
}

StateField divide_by_radius(const StateField& f) {
  require_origin_free(f.grid(), "1/|x|");
  const auto r = radius_values(f.grid());
  StateField out = f;
  auto o = out.values();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] /= r[i];
  return out;
}

const char* to_string(OperatorId id) {
  switch (id) {
    case OperatorId::position:
      return "position";
    case OperatorId::momentum:
      return "momentum";
    case OperatorId::dilation_gen:
      return "dilation_gen";
    case OperatorId::neg_laplacian:
      return "neg_laplacian";
    case OperatorId::radial_deriv_sym:
      return "radial_deriv_sym";
    case OperatorId::coulomb:
      return "coulomb";
    case OperatorId::radial_deriv_raw:
      return "radial_deriv_raw";
    case OperatorId::spherical_deriv_j:
      return "spherical_deriv_j";
    case OperatorId::x_dot_grad:
      return "x_dot_grad";
  }
  return "?";
}

bool is_vector_valued(OperatorId id) { return id == OperatorId::position || id == OperatorId::momentum; }

bool is_singular(OperatorId id) {
  return id == OperatorId::radial_deriv_sym || id == OperatorId::coulomb || id == OperatorId::radial_deriv_raw ||
         id == OperatorId::spherical_deriv_j;
}

std::variant<StateField, VectorField> apply(const OperatorHandle& op, const StateField& phi) {
  require_same_grid(op.grid, phi.grid());
  if (is_singular(op.id)) require_origin_free(op.grid, to_string(op.id));
  const cx i{0.0, 1.0};
  const double n = op.grid.dim;
  switch (op.id) {
    case OperatorId::position:
      return position(phi);
    case OperatorId::momentum:
      return -i * gradient(phi);
    case OperatorId::dilation_gen:
      return -i * (x_dot_grad(phi) + cx(n / 2.0) * phi);
    case OperatorId::neg_laplacian:
      return neg_laplacian(phi);
    case OperatorId::radial_deriv_sym:
      return -i * (radial_derivative(phi) + cx((n - 1.0) / 2.0) * divide_by_radius(phi));
    case OperatorId::coulomb:
      return divide_by_radius(phi);
    case OperatorId::radial_deriv_raw:
      return radial_derivative(phi);
    case OperatorId::spherical_deriv_j:
      return spherical_derivative(phi, op.axis);
    case OperatorId::x_dot_grad:
      return x_dot_grad(phi);
  }
  throw std::logic_error("unhandled operator");
}

StateField apply_scalar(const OperatorHandle& op, const StateField& phi) {
  if (is_vector_valued(op.id)) throw std::invalid_argument(std::string(to_string(op.id)) + " is vector-valued");
  return std::get<StateField>(apply(op, phi));
}

VectorField apply_vector(const OperatorHandle& op, const StateField& phi) {
  if (!is_vector_valued(op.id)) throw std::invalid_argument(std::string(to_string(op.id)) + " is scalar-valued");
  return std::get<VectorField>(apply(op, phi));
}

StateField resample(const StateField& f, const PointMap& map, int stencil) {
  const GridSpec& g = f.grid();
  if (stencil < 2 || stencil > g.points) throw std::invalid_argument("resample: stencil must lie in [2, N]");
  const auto dim = static_cast<std::size_t>(g.dim);
  const auto s = static_cast<std::size_t>(stencil);
  const int np = g.points;
  const double h = g.spacing();
  const auto src = f.values();

  std::vector<std::vector<std::size_t>> node(dim, std::vector<std::size_t>(s));
  std::vector<std::vector<double>> weight(dim, std::vector<double>(s));
  std::vector<double> y(dim);
  std::vector<std::size_t> k(dim);

  return StateField::sample(g, [&](std::span<const double> x) -> cx {
    map(x, y);
    for (std::size_t a = 0; a < dim; ++a) {
      const double u = (y[a] + g.half_width) / h - g.offset;  // continuous sample index
      const double first = std::floor(u) - static_cast<double>(stencil / 2 - 1);
      const double t = u - first;
      for (std::size_t m = 0; m < s; ++m) {
        double w = 1.0;
        for (std::size_t q = 0; q < s; ++q) {
          if (q != m) w *= (t - static_cast<double>(q)) / (static_cast<double>(m) - static_cast<double>(q));
        }
        weight[a][m] = w;
        long long idx = static_cast<long long>(first) + static_cast<long long>(m);
        idx %= np;
        if (idx < 0) idx += np;
        node[a][m] = static_cast<std::size_t>(idx);
      }
    }
    std::fill(k.begin(), k.end(), 0);
    cx acc{};
    while (true) {
      double w = 1.0;
      std::size_t flat = 0;
      for (std::size_t a = 0; a < dim; ++a) {
        w *= weight[a][k[a]];
        flat += node[a][k[a]] * g.stride(static_cast<int>(a));
      }
      acc += w * src[flat];
      std::size_t a = 0;
      while (a < dim && ++k[a] == s) k[a++] = 0;
      if (a == dim) break;
    }
    return acc;
  });
}

EqualityReport generator_consistency(const OperatorHandle& op, const StateField& phi, double dtheta, double tol,
                                     int stencil) {
  if (!(dtheta > 0.0)) throw std::invalid_argument("generator_consistency: dtheta must be positive");
  require_same_grid(op.grid, phi.grid());
  const GridSpec& g = phi.grid();
  const auto n = static_cast<std::size_t>(g.dim);

  std::function<StateField(double)> flow;
  StateField generator(g);
  std::string id;
  switch (op.id) {
    case OperatorId::dilation_gen:
      id = "generator.dilation";
      flow = [&](double t) {
        return cx(std::exp(static_cast<double>(n) * t / 2.0)) *
               resample(
                   phi,
                   [t](std::span<const double> x, std::span<double> y) {
                     for (std::size_t a = 0; a < x.size(); ++a) y[a] = std::exp(t) * x[a];
                   },
                   stencil);
      };
      generator = x_dot_grad(phi) + cx(static_cast<double>(n) / 2.0) * phi;
      break;
    case OperatorId::radial_deriv_raw:
      require_origin_free(g, "radial flow");
      id = "generator.radial";
      flow = [&](double t) {
        return resample(
            phi,
            [t](std::span<const double> x, std::span<double> y) {
              double r = 0.0;
              for (double v : x) r += v * v;
              r = std::sqrt(r);
              for (std::size_t a = 0; a < x.size(); ++a) y[a] = x[a] + t * x[a] / r;
            },
            stencil);
      };
      generator = radial_derivative(phi);
      break;
    case OperatorId::spherical_deriv_j: {
      require_origin_free(g, "spherical flow");
      require_axis(g, op.axis);
      id = "generator.spherical";
      const auto j = static_cast<std::size_t>(op.axis);
      flow = [&, j](double t) {
        return resample(
            phi,
            [t, j](std::span<const double> x, std::span<double> y) {
              double r2 = 0.0;
              for (double v : x) r2 += v * v;
              for (std::size_t a = 0; a < x.size(); ++a) {
                y[a] = x[a] + t * ((a == j ? 1.0 : 0.0) - x[j] * x[a] / r2);
              }
            },
            stencil);
      };
      generator = spherical_derivative(phi, op.axis);
      break;
    }
    default:
      throw std::invalid_argument(std::string("generator_consistency: no flow for operator ") + to_string(op.id));
  }
  const StateField fd = cx(1.0 / (2.0 * dtheta)) * (flow(dtheta) - flow(-dtheta));
  const double gnorm = norm(generator);
  if (gnorm == 0.0) throw std::invalid_argument("generator_consistency: generator action vanishes");
  const double rel = norm(fd - generator) / gnorm;
  EqualityReport rep = make_equality(id, rel, 0.0, tol);
  rep.context = g.describe();
  rep.context["operator"] = to_string(op.id);
  rep.metrics["dtheta"] = dtheta;
  rep.metrics["generator_norm"] = gnorm;
  return rep;
}

EqualityReport pointwise_gradient_decomposition(const StateField& phi, double tol) {
  const GridSpec& g = phi.grid();
  require_origin_free(g, "gradient decomposition");
  const VectorField grad = gradient(phi);
  const auto r = radius_values(g);
  std::vector<std::vector<double>> x;
  for (int j = 0; j < g.dim; ++j) x.push_back(axis_values(g, j));

  double lhs = 0.0, rhs = 0.0, max_dev = 0.0, max_mag = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    cx dr{};
    double g2 = 0.0;
    for (int j = 0; j < g.dim; ++j) {
      const cx gj = grad[j][i];
      dr += x[static_cast<std::size_t>(j)][i] / r[i] * gj;
      g2 += std::norm(gj);
    }
    double parts = std::norm(dr);
    for (int j = 0; j < g.dim; ++j) {
      parts += std::norm(grad[j][i] - x[static_cast<std::size_t>(j)][i] / r[i] * dr);
    }
    lhs += g2;
    rhs += parts;
    max_dev = std::max(max_dev, std::abs(g2 - parts));
    max_mag = std::max(max_mag, g2);
  }
  const double w = g.cell_volume();
  EqualityReport rep = make_equality("gradient.decomposition", lhs * w, rhs * w, tol);
  rep.context = g.describe();
  rep.metrics["max_pointwise"] = max_mag > 0.0 ? max_dev / max_mag : 0.0;
  return rep;
}

double inverse_square_lattice_constant(int n) {
  if (n < 3) throw std::invalid_argument("lattice constant needs n >= 3");
  static std::mutex m;
  static std::map<int, double> cache;
  std::lock_guard lock(m);
  if (auto it = cache.find(n); it != cache.end()) return it->second;

  using boost::math::quadrature::gauss_kronrod;
  const double pi = std::numbers::pi;
  const double half_n = n / 2.0;
  // t < 1: Poisson form theta(t) = sqrt(pi/t) (1 + 2 sum_j (-1)^j e^{-pi^2 j^2 / t}).
  auto small_t = [&](double t) {
    if (t <= 0.0) return 0.0;
    double s = 0.0;
    for (int j = 1; j < 8; ++j) s += ((j % 2) ? -1.0 : 1.0) * std::exp(-pi * pi * j * j / t);
    return std::pow(pi / t, half_n) * (std::pow(1.0 + 2.0 * s, n) - 1.0);
  };
  // t >= 1: direct sum over half-integers; (pi/t)^{n/2} integrated separately.
  auto theta_n = [&](double t) {
    double s = 0.0;
    for (int k = 0; k < 40; ++k) {
      const double e = std::exp(-t * (k + 0.5) * (k + 0.5));
      s += e;
      if (e < 1e-300) break;
    }
    return std::pow(2.0 * s, n);
  };
  const double upper = 80.0;
  double z = gauss_kronrod<double, 61>::integrate(small_t, 0.0, 1.0, 15, 1e-15);
  z += gauss_kronrod<double, 61>::integrate(theta_n, 1.0, upper, 15, 1e-15);
  z -= std::pow(pi, half_n) / (half_n - 1.0);
  cache.emplace(n, z);
  return z;
}

bool supports_singular_correction(const GridSpec& grid) {
  return grid.points % 2 == 0 && std::abs(grid.offset - 0.5) < 1e-15 && grid.dim >= 3;
}

cx origin_value(const StateField& psi) {
  const GridSpec& g = psi.grid();
  const int lo = (g.points - 1) / 2;
  // Nearest samples to 0 along each axis: indices lo and lo + 1 on a symmetric grid.
  const auto dim = static_cast<std::size_t>(g.dim);
  cx sum{};
  const std::size_t corners = std::size_t{1} << dim;
  for (std::size_t c = 0; c < corners; ++c) {
    std::size_t flat = 0;
    for (std::size_t a = 0; a < dim; ++a) {
      const auto idx = static_cast<std::size_t>(lo + static_cast<int>((c >> a) & 1U));
      flat += idx * g.stride(static_cast<int>(a));
    }
    sum += psi[flat];
  }
  return sum / static_cast<double>(corners);
}

cx singular_inner(const StateField& f, const StateField& g, cx cf, cx cg, cx psi_origin) {
  const GridSpec& grid = f.grid();
  if (!supports_singular_correction(grid)) {
    throw std::invalid_argument("singular_inner: needs n >= 3, an even N and offset 1/2");
  }
  const double z = inverse_square_lattice_constant(grid.dim);
  return l2_inner(f, g) - z * std::pow(grid.spacing(), grid.dim - 2) * cf * std::conj(cg) * std::norm(psi_origin);
}

}  // namespace ueq::grid
