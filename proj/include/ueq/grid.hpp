#pragma once

// Uniform tensor grids on the box [-L, L)^n and complex fields sampled on them.
// Flat storage is axis-0 fastest: flat = i_0 + N i_1 + N^2 i_2 + ...

#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ueq/complex_space.hpp"
#include "ueq/report.hpp"

namespace ueq::grid {

enum class Scheme { spectral_periodic, central_diff_2, central_diff_4 };

const char* to_string(Scheme s);
/// Accepts "spectral", "spectral_periodic", "cd2", "central_diff_2", "cd4", "central_diff_4".
Scheme parse_scheme(const std::string& name);

/// Hard cap on N^n.
inline constexpr std::size_t kMaxGridPoints = std::size_t{1} << 24;

struct GridSpec {
  int dim = 1;
  int points = 256;         ///< N, points per axis
  double half_width = 12.0; ///< L
  double offset = 0.5;      ///< sample offset as a fraction of h, in [0, 1)
  Scheme scheme = Scheme::spectral_periodic;

  double spacing() const { return 2.0 * half_width / points; }
  double cell_volume() const;
  /// x_i = -L + (i + offset) h along any axis.
  double coordinate(int i) const { return -half_width + (i + offset) * spacing(); }
  std::size_t size() const;
  std::vector<double> axis_coordinates() const;
  /// Index of `flat` along `axis`.
  int axis_index(std::size_t flat, int axis) const;
  std::size_t stride(int axis) const;
  /// True when no axis coordinate equals 0, i.e. the origin is not a sample.
  bool origin_free() const;
  /// Throws std::invalid_argument describing the first violated invariant.
  void validate() const;
  /// Key/value description embedded in reports.
  std::map<std::string, std::string> describe() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Complex scalar field on a grid.
class StateField {
 public:
  explicit StateField(GridSpec grid);
  StateField(GridSpec grid, std::vector<cx> values);

  /// Samples f at every grid point; f receives the point's coordinates.
  static StateField sample(const GridSpec& grid, const std::function<cx(std::span<const double>)>& f);

  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const cx> values() const { return values_; }
  std::span<cx> values() { return values_; }
  cx operator[](std::size_t i) const { return values_[i]; }
  cx& operator[](std::size_t i) { return values_[i]; }

  friend StateField operator+(const StateField& a, const StateField& b);
  friend StateField operator-(const StateField& a, const StateField& b);
  friend StateField operator*(cx c, const StateField& a);
  StateField& operator+=(const StateField& b);
  StateField& operator-=(const StateField& b);

 private:
  GridSpec grid_;
  std::vector<cx> values_;
};

/// C^n-valued field; the scalar product sums the componentwise products.
class VectorField {
 public:
  explicit VectorField(std::vector<StateField> components);

  const GridSpec& grid() const { return components_.front().grid(); }
  int dim() const { return static_cast<int>(components_.size()); }
  const StateField& operator[](int j) const { return components_[static_cast<std::size_t>(j)]; }
  StateField& operator[](int j) { return components_[static_cast<std::size_t>(j)]; }
  std::span<const StateField> components() const { return components_; }

  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  friend VectorField operator*(cx c, const VectorField& a);

 private:
  std::vector<StateField> components_;
};

/// h^n sum a conj(b); throws ShapeMismatch when the grids differ.
cx l2_inner(const StateField& a, const StateField& b);
cx l2_inner(const VectorField& a, const VectorField& b);

inline cx inner(const StateField& a, const StateField& b) { return l2_inner(a, b); }
inline cx inner(const VectorField& a, const VectorField& b) { return l2_inner(a, b); }

/// Throws ShapeMismatch unless a and b share the same grid.
void require_same_grid(const GridSpec& a, const GridSpec& b);

}  // namespace ueq::grid
