#include "beamspec/representation.hpp"

namespace beamspec {

namespace {

Mat4 diag0110() {
    Mat4 d = Mat4::Zero();
    d(1, 1) = 1.0;
    d(2, 2) = 1.0;
    return d;
}

Mat4 diag1001() {
    Mat4 d = Mat4::Zero();
    d(0, 0) = 1.0;
    d(3, 3) = 1.0;
    return d;
}

}  // namespace

Mat4 gamma(const BoundaryCondition& bc, const BeamParams& params) {
    if (!is_wellposed(bc, params)) throw NotWellPosed();
    const auto& c = constants();
    const TildeDecomposition t = tilde(bc, params);
    // One solve: tilde^-1 tilde_plus Eps - diag(1,0,0,1).
    return Eigen::PartialPivLU<Mat4>(t.tilde).solve(t.tilde_plus) * c.Eps - diag1001();
}

GreensRep gamma_rep(const BoundaryCondition& bc, const BeamParams& params) {
    GreensRep rep = greens_matrices(bc, params);
    rep.g_gamma = gamma(bc, params);
    return rep;
}

BoundaryCondition gamma_inverse(const Mat4& g, const BeamParams& params) {
    const auto& c = constants();
    const Mat4 ge = g * c.Eps;
    const Mat4 minus = (diag0110() - ge) * wronskian_W_inv(params, -params.l);
    const Mat4 plus = (diag1001() + ge) * wronskian_W_inv(params, params.l);
    return BoundaryCondition::from_blocks(minus, plus);
}

BoundaryCondition gamma_inverse_real(const Mat4& g, const BeamParams& params) {
    if (!is_pibar(g, 1e-10)) throw NotInPibar("gamma_inverse_real: g not in pibar(4)");
    const auto& c = constants();
    const BoundaryCondition rep = gamma_inverse(g, params);
    Mat48 m = c.U4 * rep.M;
    const double scale = max_abs(m);
    const double imag = m.imag().cwiseAbs().maxCoeff();
    if (imag > 1e-10 * scale)
        throw NumericalError("gamma_inverse_real: residual imaginary part " +
                             std::to_string(imag / scale) + " (relative)");
    Mat48 real_m = m.real().cast<cplx>();
    return BoundaryCondition::from_matrix(real_m);
}

std::pair<Mat4, Mat4> gamma_pm(const BoundaryCondition& bc, const BeamParams& params) {
    const GreensRep rep = greens_matrices(bc, params);
    return {rep.g_minus, rep.g_plus};
}

BoundaryCondition bc_from_pm(const Mat4& g_minus, const Mat4& g_plus, const BeamParams& params) {
    const auto& c = constants();
    const Mat4 inv_ol2 = (c.Omega * c.L2).inverse();
    const Mat4 minus = g_minus * inv_ol2 * wronskian_W_inv(params, -params.l);
    const Mat4 plus = g_plus * inv_ol2 * wronskian_W_inv(params, params.l);
    return BoundaryCondition::from_blocks(minus, plus);
}

}  // namespace beamspec
