#pragma once

// Concrete operators on gridded L^2(R^n): position, momentum, dilation
// generator, Laplacian, radial and spherical derivatives, Coulomb potential.

#include <functional>
#include <string>
#include <variant>

#include "ueq/grid.hpp"
#include "ueq/report.hpp"

namespace ueq::grid {

/// d^order f / dx_axis^order (order 1 or 2) under the grid's derivative scheme.
StateField derivative(const StateField& f, int axis, int order = 1);
VectorField gradient(const StateField& f);
/// -Laplacian, built from second derivatives along each axis.
StateField neg_laplacian(const StateField& f);
/// (x_1 f, ..., x_n f).
VectorField position(const StateField& f);
/// x . grad f.
StateField x_dot_grad(const StateField& f);
/// |x| at every sample.
std::vector<double> radius_values(const GridSpec& grid);
/// (x/|x|) . grad f; needs an origin-free grid.
StateField radial_derivative(const StateField& f);
/// L_j f = d_j f - (x_j/|x|) d_r f; needs an origin-free grid.
StateField spherical_derivative(const StateField& f, int axis);
/// f / |x|; needs an origin-free grid.
StateField divide_by_radius(const StateField& f);

enum class OperatorId {
  position,          ///< x, vector-valued
  momentum,          ///< -i grad, vector-valued
  dilation_gen,      ///< -i x.grad - i n/2
  neg_laplacian,     ///< -Laplacian
  radial_deriv_sym,  ///< -i d_r - i (n-1)/(2|x|)
  coulomb,           ///< 1/|x|
  radial_deriv_raw,  ///< d_r
  spherical_deriv_j, ///< L_j, j = OperatorHandle::axis
  x_dot_grad,        ///< x.grad
};

const char* to_string(OperatorId id);
bool is_vector_valued(OperatorId id);
/// True for operators containing x/|x| or 1/|x|.
bool is_singular(OperatorId id);

struct OperatorHandle {
  OperatorId id;
  GridSpec grid;
  int axis = 0;  ///< used by spherical_deriv_j only
};

/// Rejects grid mismatch, origin-on-grid for singular operators and bad axes.
std::variant<StateField, VectorField> apply(const OperatorHandle& op, const StateField& phi);
StateField apply_scalar(const OperatorHandle& op, const StateField& phi);
VectorField apply_vector(const OperatorHandle& op, const StateField& phi);

/// Evaluates f at map(x) for every sample x by tensor-product Lagrange
/// interpolation over `stencil` periodic neighbours per axis.
using PointMap = std::function<void(std::span<const double> x, std::span<double> y)>;
StateField resample(const StateField& f, const PointMap& map, int stencil = 12);

/// Central difference of the flow generated by `op` at theta = 0 against the
/// generator action. Supported: dilation_gen (flow e^{n t/2} phi(e^t x),
/// generator iA = x.grad + n/2), radial_deriv_raw (phi(x + t x/|x|)) and
/// spherical_deriv_j (phi(x + t(e_j - x_j x/|x|^2))). lhs is
/// ||difference quotient - generator|| / ||generator||, rhs is 0.
EqualityReport generator_consistency(const OperatorHandle& op, const StateField& phi, double dtheta,
                                     double tol = 1e-5, int stencil = 12);

/// |grad phi|^2 = |d_r phi|^2 + sum_j |L_j phi|^2, integrated; the pointwise
/// maximum deviation relative to max |grad phi|^2 is in metrics["max_pointwise"].
EqualityReport pointwise_gradient_decomposition(const StateField& phi, double tol = 1e-12);

// Quadrature of 1/|x|-singular fields on cell-centred grids.
//
// For F = f + (c/|x|) psi with f, psi smooth, the plain lattice sum h^n sum |F|^2
// misses the integral by Z_n h^{n-2} |c psi(0)|^2 + o(h^{n-2}), where
// Z_n = int_0^inf (theta(t)^n - (pi/t)^{n/2}) dt and theta(t) = sum_{k in Z+1/2} e^{-t k^2}
// is the constant of the lattice (Z+1/2)^n.

/// Z_n for n >= 3.
double inverse_square_lattice_constant(int n);

/// True when the grid is the symmetric cell-centred lattice (offset 1/2, N even)
/// for which the correction applies.
bool supports_singular_correction(const GridSpec& grid);

/// psi(0) estimated by the mean of the 2^n samples nearest the origin.
cx origin_value(const StateField& psi);

/// (F|G) minus the lattice error Z_n h^{n-2} cF conj(cG) |psi(0)|^2, where
/// F, G contain the singular parts cF psi/|x| and cG psi/|x|.
cx singular_inner(const StateField& f, const StateField& g, cx cf, cx cg, cx psi_origin);

}  // namespace ueq::grid
