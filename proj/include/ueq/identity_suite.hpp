#pragma once

// Verifiers for the analytic uncertainty identities on gridded or radial states.
// Each returns one EqualityReport per identity; reports carry the grid (or
// radial quadrature) description in their context.
//
// Identity ids:
//   position/momentum    xp.canonical, xp.normalized_sum, xp.pythagoras,
//                        xp.schrodinger, xp.orthogonality
//   dilation             dil.gap_identity, dil.gap
//   Hardy                hardy.equality, hardy.transfer_lhs, hardy.transfer_remainder,
//                        hardy.chain.radial, hardy.chain.gradient
//   dilation/Laplacian   dh.grad_vs_hamiltonian, dh.grad_vs_commutator, dh.grad_vs_imag,
//                        dh.grad_vs_normalized, dh.inequality
//   radial/Coulomb       rc.coulomb_vs_commutator, rc.coulomb_vs_imag, rc.coulomb_vs_normalized,
//                        rc.symmetrized_norm, rc.relative_bound, rc.orthogonality,
//                        rc.pythagoras, rc.hardy, rc.hardy_gradient_form

#include <vector>

#include "ueq/cauchy_schwarz.hpp"
#include "ueq/grid.hpp"
#include "ueq/radial.hpp"
#include "ueq/report.hpp"

namespace ueq::identities {

/// With A = -i grad and B = x:
///   n||phi||^2 = -2 Re(x phi|grad phi)
///              = ||x phi|| ||grad phi|| (2 - ||x phi/||x phi|| + grad phi/||grad phi|| ||^2)
///              = ||x phi||^2 + ||grad phi||^2 - ||x phi + grad phi||^2,
///   |(x phi|grad phi)| = ||x phi|| ||grad phi|| (1 - ||x^phi - sgn(x phi|grad phi) grad^phi||^2 / 2),
///   Re(x.grad phi + (n/2) phi | phi) = 0 (normalized by ||phi||^2).
/// Rejects states with x phi = 0 or grad phi = 0.
std::vector<EqualityReport> verify_position_momentum(const grid::StateField& phi, double tol = 1e-8);

/// Which extremal families phi belongs to, judged within tol.
struct PositionMomentumSaturation {
  bool sum = false;      ///< n||phi||^2 = ||x phi||^2 + ||grad phi||^2 (coherent)
  bool product = false;  ///< n||phi||^2 = 2||x phi|| ||grad phi|| (squeezed)
  bool modulus = false;  ///< |(x phi|grad phi)| = ||x phi|| ||grad phi|| (complex squeezed)
  ExtremizerParts parts; ///< the five Parts for the pair (x phi, grad phi)
};
PositionMomentumSaturation classify_position_momentum(const grid::StateField& phi, double tol = 1e-6);

/// ||x.grad phi||^2 = ||x.grad phi + (n/2)phi||^2 + (n/2)^2 ||phi||^2 and the
/// strict positivity of the gap ||x.grad phi + (n/2) phi||^2 (floor tol ||phi||^2).
/// metrics: gap, ratio = ||x.grad phi||^2 / ((n/2)^2 ||phi||^2).
std::vector<EqualityReport> verify_dilation_gap(const grid::StateField& phi, double tol = 1e-8);
std::vector<EqualityReport> verify_dilation_gap(const radial::RadialState& phi, double tol = 1e-8);

/// Hardy equality ||d_r psi||^2 = ||d_r psi + (n-2)/(2|x|) psi||^2 + ((n-2)/2)^2 ||psi/|x| ||^2,
/// the transfer identities for phi = psi/|x| (radial only) and the chain
/// ||psi/|x| || <= 2/(n-2) ||d_r psi|| <= 2/(n-2) ||grad psi||. Needs n >= 3.
/// On cell-centred grids the 1/|x|^2-singular sums use the lattice correction.
std::vector<EqualityReport> verify_hardy(const radial::RadialState& psi, double tol = 1e-8);
std::vector<EqualityReport> verify_hardy(const grid::StateField& psi, double tol = 1e-3);

/// With A = -i x.grad - i n/2 and B = -Laplacian:
///   2||grad phi||^2 = 2(B phi|phi) = -i([A,B]phi|phi) = -2 Im(A phi|B phi)
///                   = ||A phi|| ||B phi|| (2 - ||A^phi + i B^phi||^2),
/// and ||grad phi||^2 <= ||x.grad phi + (n/2)phi|| ||Laplacian phi||.
std::vector<EqualityReport> verify_dilation_hamiltonian(const grid::StateField& phi, double tol = 1e-7);

/// With A = -i(d_r + (n-1)/(2|x|)) and B = 1/|x| (n >= 3):
///   ||B phi||^2 = -i([A,B]phi|phi) = -2 Im(A phi|B phi) = ||A phi|| ||B phi|| (2 - ||A^phi + i B^phi||^2),
///   ||A phi||^2 = ||d_r phi||^2 - ((n-1)(n-3)/4) ||B phi||^2,
///   ||B phi|| <= 2 ||A phi||  (metrics["ratio"] = ||B phi|| / (2||A phi||)),
///   Re(B phi - 2i A phi | B phi) = 0, 4||A phi||^2 = ||2i A phi - B phi||^2 + ||B phi||^2,
///   4||d_r phi||^2 = 4||d_r phi + (n-2)/(2|x|) phi||^2 + (n-2)^2 ||phi/|x| ||^2,
///   ||grad phi||^2 - sum_j ||L_j phi||^2 = ||d_r phi + (n-2)/(2|x|) phi||^2 + ((n-2)/2)^2 ||phi/|x| ||^2.
std::vector<EqualityReport> verify_radial_coulomb(const radial::RadialState& phi, double tol = 1e-6);
std::vector<EqualityReport> verify_radial_coulomb(const grid::StateField& phi, double tol = 1e-3);

}  // namespace ueq::identities
