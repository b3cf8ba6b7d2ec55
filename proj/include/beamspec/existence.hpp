#pragma once

#include "beamspec/representation.hpp"
#include "beamspec/spectral.hpp"

namespace beamspec {

/// Minimal-norm rank-one solution of G * (g0 r) = r:
/// G = r (g0 r)^T / ||g0 r||^2. Throws ZeroImage when g0 r is numerically
/// zero relative to ||g0|| ||r||.
RMat4 rank_one_inverse_image(const RMat4& g0, const RVec4& r);

struct ConstructionResult {
    BoundaryCondition bc;   ///< real and well-posed
    SpectralPoint point;    ///< lambda with null vector and residual
    Mat4 g;                 ///< the representation matrix realizing lambda
};

/// For real nonzero lambda off the base spectrum, builds a real well-posed
/// boundary condition whose operator has lambda as an eigenvalue:
/// Y(l) -> real form -> rank-one preimage -> back through the representation.
/// Throws InSpecQ (lambda at/near a base-spectrum point), ZeroLambda.
ConstructionResult construct_bc_for_eigenvalue(double lambda, const BeamParams& params);

}  // namespace beamspec
