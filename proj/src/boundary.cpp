#include "beamspec/boundary.hpp"

#include <cmath>

namespace beamspec {

namespace {

bool matrix_is_real(const Mat48& m) {
    return m.imag().cwiseAbs().maxCoeff() == 0.0;
}

}  // namespace

BoundaryCondition BoundaryCondition::from_blocks(const Mat4& minus, const Mat4& plus) {
    BoundaryCondition bc;
    bc.M.leftCols<4>() = minus;
    bc.M.rightCols<4>() = plus;
    bc.is_real = matrix_is_real(bc.M);
    return bc;
}

BoundaryCondition BoundaryCondition::from_matrix(const Mat48& m) {
    BoundaryCondition bc;
    bc.M = m;
    bc.is_real = matrix_is_real(m);
    return bc;
}

BoundaryCondition named_bc(NamedBC which, const BeamParams& params) {
    const double a = params.alpha;
    const double s2 = std::sqrt(2.0);
    Mat48 m = Mat48::Zero();
    switch (which) {
        case NamedBC::Q:
            m(0, 1) = a * a;
            m(0, 2) = -s2 * a;
            m(0, 3) = 1.0;
            m(1, 0) = s2 * a * a * a;
            m(1, 1) = -a * a;
            m(1, 3) = 1.0;
            m(2, 5) = a * a;
            m(2, 6) = s2 * a;
            m(2, 7) = 1.0;
            m(3, 4) = -s2 * a * a * a;
            m(3, 5) = -a * a;
            m(3, 7) = 1.0;
            break;
        case NamedBC::Clamped:  // u and u' vanish at both ends
            m(0, 0) = 1.0;
            m(1, 1) = 1.0;
            m(2, 4) = 1.0;
            m(3, 5) = 1.0;
            break;
        case NamedBC::Free:  // u'' and u''' vanish at both ends
            m(0, 2) = 1.0;
            m(1, 3) = 1.0;
            m(2, 6) = 1.0;
            m(3, 7) = 1.0;
            break;
        case NamedBC::Hinged:  // u and u'' vanish at both ends
            m(0, 0) = 1.0;
            m(1, 2) = 1.0;
            m(2, 4) = 1.0;
            m(3, 6) = 1.0;
            break;
    }
    return BoundaryCondition::from_matrix(m);
}

TildeDecomposition tilde(const BoundaryCondition& bc, const BeamParams& params) {
    TildeDecomposition t;
    t.tilde_minus = bc.minus() * wronskian_W(params, -params.l);
    t.tilde_plus = bc.plus() * wronskian_W(params, params.l);
    t.tilde = t.tilde_minus + t.tilde_plus;
    t.det_tilde = t.tilde.determinant();
    return t;
}

bool is_wellposed(const BoundaryCondition& bc, const BeamParams& params, double tol) {
    const TildeDecomposition t = tilde(bc, params);
    const double scale = max_abs(t.tilde);
    if (!(scale > 0.0)) return false;
    return std::abs(t.det_tilde) > tol * scale * scale * scale * scale;
}

GreensRep greens_matrices(const BoundaryCondition& bc, const BeamParams& params) {
    if (!is_wellposed(bc, params)) throw NotWellPosed();
    const auto& c = constants();
    const TildeDecomposition t = tilde(bc, params);
    const Mat4 omega_l2 = c.Omega * c.L2;
    Eigen::PartialPivLU<Mat4> lu(t.tilde);
    GreensRep rep;
    rep.g_minus = lu.solve(t.tilde_minus) * omega_l2;
    rep.g_plus = lu.solve(t.tilde_plus) * omega_l2;
    return rep;
}

bool equivalent(const BoundaryCondition& a, const BoundaryCondition& b, const BeamParams& params,
                double tol) {
    const GreensRep ra = greens_matrices(a, params);
    const GreensRep rb = greens_matrices(b, params);
    return max_abs(Mat4(ra.g_plus - rb.g_plus)) <= tol;
}

BoundaryCondition random_wellposed(std::mt19937_64& rng, const BeamParams& params,
                                   bool real_entries) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (;;) {
        Mat48 m;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 8; ++j)
                m(i, j) = real_entries ? cplx(gauss(rng), 0.0) : cplx(gauss(rng), gauss(rng));
        BoundaryCondition bc = BoundaryCondition::from_matrix(m);
        if (is_wellposed(bc, params)) return bc;
    }
}

}  // namespace beamspec
