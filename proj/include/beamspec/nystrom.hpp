#pragma once

#include "beamspec/spectral.hpp"

namespace beamspec {

/// Plain product-rule discretization A_ij = G(x_i, x_j) w_j of the integral
/// operator. Throws NotWellPosed.
MatX nystrom_matrix(const BoundaryCondition& bc, const BeamParams& params,
                    const QuadratureRule& rule);

/// Eigenvalues of the N-node discretization, sorted by decreasing modulus;
/// the `top` largest are returned. Throws NotWellPosed.
std::vector<cplx> nystrom_spectrum(const BoundaryCondition& bc, const BeamParams& params, int n,
                                   int top);

struct NystromEigen {
    cplx lambda;
    double residual;           ///< ||A v - lambda v||_2 with ||v||_2 = 1
    double convergence_delta;  ///< |lambda_N - lambda_2N| / max(|lambda_N|, eps)
};

/// Spectrum with per-eigenvalue residuals and a doubling-based convergence
/// estimate (the matrix is rebuilt at 2N and eigenvalues matched by
/// proximity). Throws NotWellPosed.
std::vector<NystromEigen> nystrom_report(const BoundaryCondition& bc, const BeamParams& params,
                                         int n, int top);

}  // namespace beamspec
