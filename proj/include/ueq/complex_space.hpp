#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "ueq/report.hpp"

namespace ueq {

/// Thrown when two operands live in different spaces (dimension or grid mismatch).
class ShapeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A scalar-product space element: linear combinations plus a scalar product
/// that is linear in the first slot and antilinear in the second.
template <typename V>
concept ScalarProductSpace = requires(const V& a, const V& b, cx c) {
  { inner(a, b) } -> std::convertible_to<cx>;
  { a + b } -> std::convertible_to<V>;
  { a - b } -> std::convertible_to<V>;
  { c * a } -> std::convertible_to<V>;
};

template <ScalarProductSpace V>
double norm(const V& v) {
  return std::sqrt(std::max(0.0, inner(v, v).real()));
}

/// sgn z = z/|z| for z != 0 and sgn 0 = 1.
cx sgn(cx z);

namespace space {

/// Finite-dimensional vector in C^d with the standard scalar product.
class ComplexVector {
 public:
  explicit ComplexVector(std::vector<cx> entries);
  ComplexVector(std::initializer_list<cx> entries);

  std::size_t dim() const { return entries_.size(); }
  std::span<const cx> entries() const { return entries_; }
  cx operator[](std::size_t i) const { return entries_[i]; }
  bool is_zero() const;

  friend ComplexVector operator+(const ComplexVector& a, const ComplexVector& b);
  friend ComplexVector operator-(const ComplexVector& a, const ComplexVector& b);
  friend ComplexVector operator*(cx c, const ComplexVector& a);

 private:
  std::vector<cx> entries_;
};

/// (u|v) = sum_j u_j conj(v_j).
cx inner(const ComplexVector& u, const ComplexVector& v);

/// Entries with independent standard-normal real and imaginary parts.
ComplexVector random_vector(std::size_t dim, std::mt19937_64& rng, bool normalize = false);

}  // namespace space
}  // namespace ueq
