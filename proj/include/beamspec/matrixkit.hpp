#pragma once

#include <array>

#include "beamspec/types.hpp"

namespace beamspec {

/// The fixed matrices the whole construction is built from. All are exact up
/// to floating-point rounding of 1/sqrt(2); the identity battery in the tests
/// pins them down to 1e-14.
struct StructuredConstants {
    /// omega[j-1] = exp(i*pi*(2j-1)/4), the primitive 4th roots of -1.
    std::array<cplx, 4> omega;
    Mat4 Omega;   ///< diag(omega_1..omega_4)
    Mat4 W0;      ///< Vandermonde matrix (omega_j^(i-1))
    Mat4 R4;      ///< 4x4 reversal (anti-diagonal ones)
    Mat8 R8;      ///< 8x8 reversal
    Mat4 L;       ///< cyclic up-shift
    Mat4 L2;      ///< L^2, the half-turn swap
    Mat4 Eps;     ///< diag(1,-1,-1,1)
    Mat4 U4;      ///< unitary intertwiner between pibar(4) and real matrices
    Mat4 V;       ///< orthogonal block mixer for the polynomial branch
    Mat4 Vhat;    ///< column swap (2<->3)
};

/// Builds (once) and returns the constant set.
const StructuredConstants& constants();

/// 2n x 2n unitary (1/sqrt2) [[I, R],[iR, -iI]]; u2n(2) == U4.
MatX u2n(int n);

/// Reversal matrix of arbitrary size.
MatX reversal(int n);

/// diag(1, alpha, alpha^2, alpha^3)
Mat4 alpha_scaling(double alpha);

/// e^{Omega z} (diagonal, computed entrywise).
Mat4 exp_Omega(cplx z);

/// e^{Eps*Omega z} = diag(e^{w1 z}, e^{-w2 z}, e^{-w3 z}, e^{w4 z}).
Mat4 exp_eps_Omega(cplx z);

/// Vector of the homogeneous solutions e^{omega_j alpha x}.
Vec4 y_vector(const BeamParams& params, double x);

/// Wronskian matrix of the homogeneous basis: row i, column j equals
/// (omega_j alpha)^(i-1) e^{omega_j alpha x}.
Mat4 wronskian_W(const BeamParams& params, double x);

/// Closed-form inverse (1/4) e^{-Omega alpha x} W0^* diag(1,a,a^2,a^3)^-1.
Mat4 wronskian_W_inv(const BeamParams& params, double x);

/// True iff R * conj(A) * R == A within tol (max-norm); A must be square of
/// even size.
bool is_pibar(const MatX& a, double tol = 1e-10);

/// Real form conj(U_2n) A U_2n^T of a matrix fixed by the half-turn
/// conjugation. Throws NotInPibar if the precondition fails at 1e-10.
RMatX pibar_to_real(const MatX& a);

/// Inverse of pibar_to_real: U_2n^T B conj(U_2n).
MatX real_to_pibar(const RMatX& b);

/// The branch parameter: the unique kappa with kappa^4 = 1 - 1/(lambda k) and
/// arg kappa in [0, pi/2). Throws DegenerateLambda for lambda in {0, 1/k}.
cplx chi(cplx lambda, double k);

/// Inverse map 1 / (k (1 - kappa^4)).
cplx chi_inverse(cplx kappa, double k);

}  // namespace beamspec
