#include "ueq/complex_space.hpp"
#include "ueq/cauchy_schwarz.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace ueq {

cx sgn(cx z) {
  const double m = std::abs(z);
  if (m == 0.0) return {1.0, 0.0};
  return z / m;
}

namespace space {

namespace {
void check_entries(const std::vector<cx>& e) {
  if (e.empty()) throw std::invalid_argument("ComplexVector: dimension must be at least 1");
  for (const auto& z : e) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("ComplexVector: entries must be finite");
    }
  }
}

void check_same_dim(const ComplexVector& a, const ComplexVector& b) {
  if (a.dim() != b.dim()) {
    throw ShapeMismatch("dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  }
}
}  // namespace

ComplexVector::ComplexVector(std::vector<cx> entries) : entries_(std::move(entries)) { check_entries(entries_); }

ComplexVector::ComplexVector(std::initializer_list<cx> entries) : entries_(entries) { check_entries(entries_); }

bool ComplexVector::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](cx z) { return z == cx{}; });
}

ComplexVector operator+(const ComplexVector& a, const ComplexVector& b) {
  check_same_dim(a, b);
  std::vector<cx> out(a.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.entries_[i] + b.entries_[i];
  return ComplexVector(std::move(out));
}

ComplexVector operator-(const ComplexVector& a, const ComplexVector& b) {
  check_same_dim(a, b);
  std::vector<cx> out(a.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.entries_[i] - b.entries_[i];
  return ComplexVector(std::move(out));
}

ComplexVector operator*(cx c, const ComplexVector& a) {
  std::vector<cx> out(a.dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = c * a.entries_[i];
  return ComplexVector(std::move(out));
}

cx inner(const ComplexVector& u, const ComplexVector& v) {
  check_same_dim(u, v);
  cx s{};
  for (std::size_t i = 0; i < u.dim(); ++i) s += u[i] * std::conj(v[i]);
  return s;
}

ComplexVector random_vector(std::size_t dim, std::mt19937_64& rng, bool normalize) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cx> e(dim);
  for (auto& z : e) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    z = {re, im};
  }
  ComplexVector v(std::move(e));
  if (normalize) {
    const double n = norm(v);
    if (n > 0.0) v = cx(1.0 / n) * v;
  }
  return v;
}

}  // namespace space
}  // namespace ueq

namespace ueq {

std::vector<double> default_angles(std::mt19937_64& rng, int random_count) {
  std::vector<double> out{0.0, std::numbers::pi / 4.0, std::numbers::pi / 2.0, 2.0, std::numbers::pi};
  std::uniform_real_distribution<double> uni(0.0, 2.0 * std::numbers::pi);
  for (int k = 0; k < random_count; ++k) out.push_back(uni(rng));
  return out;
}

namespace detail {

void settle_part(PartVerdict& part, int index, double tol, std::initializer_list<std::size_t> reverse_exact) {
  // Rounding floor so that tol = 0 still accepts exactly constructed pairs.
  constexpr double kFloor = 64.0 * std::numeric_limits<double>::epsilon();
  const auto& r = part.clause_residuals;
  part.holds = r[0] <= tol + kFloor;
  const double agree = kClauseSlack * tol + kFloor;
  const char* names = "abcd";
  if (part.holds) {
    for (std::size_t k = 1; k < r.size(); ++k) {
      if (!(r[k] <= agree)) {
        throw ConsistencyError("Part " + std::to_string(index) + ": clause (a) holds (residual " +
                               std::to_string(r[0]) + ") but clause (" + names[k] + ") has residual " +
                               std::to_string(r[k]));
      }
    }
  }
  for (std::size_t k : reverse_exact) {
    if (r[k] <= tol && !(r[0] <= agree)) {
      throw ConsistencyError("Part " + std::to_string(index) + ": clause (" + names[k] +
                             ") holds but clause (a) has residual " + std::to_string(r[0]));
    }
  }
}

}  // namespace detail
}  // namespace ueq
