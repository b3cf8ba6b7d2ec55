#pragma once

#include <cstdint>
#include <random>

#include "beamspec/matrixkit.hpp"

namespace beamspec {

/// A two-point boundary condition: four linear conditions on the boundary
/// data (u, u', u'', u''') at -l and +l, stored as the 4x8 block matrix
/// (M_minus | M_plus).
struct BoundaryCondition {
    Mat48 M;
    bool is_real = false;

    Mat4 minus() const { return M.leftCols<4>(); }
    Mat4 plus() const { return M.rightCols<4>(); }

    static BoundaryCondition from_blocks(const Mat4& minus, const Mat4& plus);
    static BoundaryCondition from_matrix(const Mat48& m);
};

/// M reduced against the Wronskian at the endpoints. tilde = tilde_minus +
/// tilde_plus; invertibility of tilde is exactly well-posedness.
struct TildeDecomposition {
    Mat4 tilde_minus;
    Mat4 tilde_plus;
    Mat4 tilde;
    cplx det_tilde;
};

/// The pair of 4x4 matrices that determine the Green's kernel, plus the slot
/// for the representation image (filled by gamma_rep).
struct GreensRep {
    Mat4 g_minus;
    Mat4 g_plus;
    Mat4 g_gamma = Mat4::Zero();
};

enum class NamedBC : std::uint8_t { Q, Clamped, Free, Hinged };

/// The shipped boundary conditions. Q is the condition whose kernel equals
/// the classical infinite-beam kernel restricted to [-l, l]; clamped/free/
/// hinged are the usual engineering end conditions.
BoundaryCondition named_bc(NamedBC which, const BeamParams& params);

TildeDecomposition tilde(const BoundaryCondition& bc, const BeamParams& params);

/// Scale-invariant test |det tilde| > tol * ||tilde||_max^4.
bool is_wellposed(const BoundaryCondition& bc, const BeamParams& params, double tol = 1e-10);

/// g_minus = tilde^-1 tilde_minus Omega L^2 and likewise g_plus; their sum is
/// always Omega L^2. Throws NotWellPosed.
GreensRep greens_matrices(const BoundaryCondition& bc, const BeamParams& params);

/// Two conditions are equivalent iff they generate the same kernel, i.e. the
/// same g_plus block. Throws NotWellPosed.
bool equivalent(const BoundaryCondition& a, const BoundaryCondition& b, const BeamParams& params,
                double tol = 1e-10);

/// Random well-posed condition (Gaussian entries, rejection on the det test).
BoundaryCondition random_wellposed(std::mt19937_64& rng, const BeamParams& params,
                                   bool real_entries);

}  // namespace beamspec
