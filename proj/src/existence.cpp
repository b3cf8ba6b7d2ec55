#include "beamspec/existence.hpp"

#include <cmath>

namespace beamspec {

RMat4 rank_one_inverse_image(const RMat4& g0, const RVec4& r) {
    const RVec4 image = g0 * r;
    const double norm = image.norm();
    if (norm < 1e-12 * g0.norm() * r.norm() || !(norm > 0.0))
        throw ZeroImage("rank_one_inverse_image: g0 * r is numerically zero");
    return (r * image.transpose()) / (norm * norm);
}

ConstructionResult construct_bc_for_eigenvalue(double lambda, const BeamParams& params) {
    if (std::abs(lambda) < 1e-300) throw ZeroLambda();
    if (x_margin(lambda, params.l, params) < 1e-8)
        throw InSpecQ("construct_bc_for_eigenvalue: lambda is at/near a base-spectrum point");

    const Mat4 y = Y_matrix(lambda, params.l, params);
    const RMat4 g0 = pibar_to_real(y).eval();

    // First basis vector with a usable image; the Y != 0 guarantee means some
    // column is nonzero.
    RVec4 r = RVec4::Zero();
    bool found = false;
    for (int j = 0; j < 4 && !found; ++j) {
        RVec4 e = RVec4::Zero();
        e(j) = 1.0;
        if ((g0 * e).norm() >= 1e-8 * g0.norm()) {
            r = e;
            found = true;
        }
    }
    if (!found) throw ZeroImage("construct_bc_for_eigenvalue: Y maps all basis vectors to ~0");

    const RMat4 g_hat = rank_one_inverse_image(g0, r);
    const Mat4 g = real_to_pibar(g_hat);
    ConstructionResult result;
    result.g = g;
    result.bc = gamma_inverse_real(g, params);

    result.point = characteristic_point(g, lambda, params);
    return result;
}

}  // namespace beamspec
