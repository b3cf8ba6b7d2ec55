#pragma once

#include "beamspec/boundary.hpp"

namespace beamspec {

/// The 4x4 matrix representing the equivalence class of bc. Zero exactly for
/// the reference condition Q. Throws NotWellPosed.
Mat4 gamma(const BoundaryCondition& bc, const BeamParams& params);

/// greens_matrices with the g_gamma slot filled.
GreensRep gamma_rep(const BoundaryCondition& bc, const BeamParams& params);

/// A representative boundary condition mapping to g under gamma; always
/// well-posed (its reduced matrix is the identity).
BoundaryCondition gamma_inverse(const Mat4& g, const BeamParams& params);

/// Real representative for g in pibar(4). Entries with residual imaginary
/// parts below 1e-10 * ||M||_max are truncated to exactly zero; larger
/// residuals raise NumericalError. Throws NotInPibar if g is not in pibar(4).
BoundaryCondition gamma_inverse_real(const Mat4& g, const BeamParams& params);

/// The (g_minus, g_plus) pair for bc. Throws NotWellPosed.
std::pair<Mat4, Mat4> gamma_pm(const BoundaryCondition& bc, const BeamParams& params);

/// Boundary condition with prescribed (g_minus, g_plus); requires
/// g_minus + g_plus = Omega L^2 (this is not checked).
BoundaryCondition bc_from_pm(const Mat4& g_minus, const Mat4& g_plus, const BeamParams& params);

}  // namespace beamspec
