#include "ueq/grid.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ueq::grid {

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::spectral_periodic:
      return "spectral_periodic";
    case Scheme::central_diff_2:
      return "central_diff_2";
    case Scheme::central_diff_4:
      return "central_diff_4";
  }
  return "?";
}

Scheme parse_scheme(const std::string& name) {
  if (name == "spectral" || name == "spectral_periodic") return Scheme::spectral_periodic;
  if (name == "cd2" || name == "central_diff_2") return Scheme::central_diff_2;
  if (name == "cd4" || name == "central_diff_4") return Scheme::central_diff_4;
  throw std::invalid_argument("unknown derivative scheme '" + name + "'");
}

double GridSpec::cell_volume() const { return std::pow(spacing(), dim); }

std::size_t GridSpec::size() const {
  std::size_t s = 1;
  for (int a = 0; a < dim; ++a) s *= static_cast<std::size_t>(points);
  return s;
}

std::vector<double> GridSpec::axis_coordinates() const {
  std::vector<double> x(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) x[static_cast<std::size_t>(i)] = coordinate(i);
  return x;
}

std::size_t GridSpec::stride(int axis) const {
  std::size_t s = 1;
  for (int a = 0; a < axis; ++a) s *= static_cast<std::size_t>(points);
  return s;
}

int GridSpec::axis_index(std::size_t flat, int axis) const {
  return static_cast<int>((flat / stride(axis)) % static_cast<std::size_t>(points));
}

bool GridSpec::origin_free() const {
  // x_i = 0 <=> i + offset = N/2.
  const double i = points / 2.0 - offset;
  return std::abs(i - std::round(i)) > 1e-12;
}

void GridSpec::validate() const {
  if (dim < 1) throw std::invalid_argument("grid: dim must be >= 1");
  if (points < 2) throw std::invalid_argument("grid: points per axis must be >= 2");
  if (!(half_width > 0.0) || !std::isfinite(half_width)) throw std::invalid_argument("grid: half_width must be positive");
  if (!(offset >= 0.0 && offset < 1.0)) throw std::invalid_argument("grid: offset must lie in [0, 1)");
  if (scheme == Scheme::spectral_periodic && points % 2 != 0) {
    throw std::invalid_argument("grid: spectral_periodic needs an even number of points");
  }
  if (scheme == Scheme::central_diff_4 && points < 5) throw std::invalid_argument("grid: central_diff_4 needs N >= 5");
  double total = 1.0;
  for (int a = 0; a < dim; ++a) total *= points;
  if (total > static_cast<double>(kMaxGridPoints)) {
    throw std::invalid_argument("grid: N^n exceeds the 2^24 point cap");
  }
}

std::map<std::string, std::string> GridSpec::describe() const {
  auto num = [](double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
  };
  return {{"grid.n", std::to_string(dim)},
          {"grid.N", std::to_string(points)},
          {"grid.L", num(half_width)},
          {"grid.offset", num(offset)},
          {"grid.scheme", to_string(scheme)}};
}

void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw ShapeMismatch("fields live on different grids");
}

StateField::StateField(GridSpec grid) : grid_(grid) {
  grid_.validate();
  values_.assign(grid_.size(), cx{});
}

StateField::StateField(GridSpec grid, std::vector<cx> values) : grid_(grid), values_(std::move(values)) {
  grid_.validate();
  if (values_.size() != grid_.size()) {
    throw ShapeMismatch("StateField: expected " + std::to_string(grid_.size()) + " values, got " +
                        std::to_string(values_.size()));
  }
  for (const auto& z : values_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("StateField: values must be finite");
    }
  }
}

StateField StateField::sample(const GridSpec& grid, const std::function<cx(std::span<const double>)>& f) {
  StateField out(grid);
  const auto axis = grid.axis_coordinates();
  const auto n = static_cast<std::size_t>(grid.dim);
  const auto np = static_cast<std::size_t>(grid.points);
  std::vector<std::size_t> idx(n, 0);
  std::vector<double> x(n, axis[0]);
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    out.values_[flat] = f(x);
    for (std::size_t a = 0; a < n; ++a) {
      if (++idx[a] < np) {
        x[a] = axis[idx[a]];
        break;
      }
      idx[a] = 0;
      x[a] = axis[0];
    }
  }
  return out;
}

StateField operator+(const StateField& a, const StateField& b) {
  StateField out = a;
  out += b;
  return out;
}

StateField operator-(const StateField& a, const StateField& b) {
  StateField out = a;
  out -= b;
  return out;
}

StateField operator*(cx c, const StateField& a) {
  StateField out = a;
  for (auto& z : out.values_) z *= c;
  return out;
}

StateField& StateField::operator+=(const StateField& b) {
  require_same_grid(grid_, b.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += b.values_[i];
  return *this;
}

StateField& StateField::operator-=(const StateField& b) {
  require_same_grid(grid_, b.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= b.values_[i];
  return *this;
}

VectorField::VectorField(std::vector<StateField> components) : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("VectorField: needs at least one component");
  for (const auto& c : components_) require_same_grid(components_.front().grid(), c.grid());
}

namespace {
void require_same_shape(const VectorField& a, const VectorField& b) {
  if (a.dim() != b.dim()) throw ShapeMismatch("VectorField: component count mismatch");
  require_same_grid(a.grid(), b.grid());
}
}  // namespace

VectorField operator+(const VectorField& a, const VectorField& b) {
  require_same_shape(a, b);
  VectorField out = a;
  for (int j = 0; j < a.dim(); ++j) out[j] += b[j];
  return out;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  require_same_shape(a, b);
  VectorField out = a;
  for (int j = 0; j < a.dim(); ++j) out[j] -= b[j];
  return out;
}

VectorField operator*(cx c, const VectorField& a) {
  VectorField out = a;
  for (int j = 0; j < a.dim(); ++j) out[j] = c * a[j];
  return out;
}

cx l2_inner(const StateField& a, const StateField& b) {
  require_same_grid(a.grid(), b.grid());
  cx s{};
  const auto va = a.values();
  const auto vb = b.values();
  for (std::size_t i = 0; i < va.size(); ++i) s += va[i] * std::conj(vb[i]);
  return s * a.grid().cell_volume();
}

cx l2_inner(const VectorField& a, const VectorField& b) {
  require_same_shape(a, b);
  cx s{};
  for (int j = 0; j < a.dim(); ++j) s += l2_inner(a[j], b[j]);
  return s;
}

}  // namespace ueq::grid
