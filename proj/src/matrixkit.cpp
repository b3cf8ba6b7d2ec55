#include "beamspec/matrixkit.hpp"

#include <cmath>

namespace beamspec {

namespace {

StructuredConstants build_constants() {
    StructuredConstants c;
    const double pi = std::acos(-1.0);
    for (int j = 1; j <= 4; ++j) {
        const double arg = pi * (2 * j - 1) / 4.0;
        c.omega[j - 1] = cplx(std::cos(arg), std::sin(arg));
    }
    c.Omega.setZero();
    for (int j = 0; j < 4; ++j) c.Omega(j, j) = c.omega[j];

    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) c.W0(i, j) = std::pow(c.omega[j], i);

    c.R4.setZero();
    for (int i = 0; i < 4; ++i) c.R4(i, 3 - i) = 1.0;
    c.R8.setZero();
    for (int i = 0; i < 8; ++i) c.R8(i, 7 - i) = 1.0;

    c.L.setZero();
    c.L(0, 1) = c.L(1, 2) = c.L(2, 3) = c.L(3, 0) = 1.0;
    c.L2 = c.L * c.L;

    c.Eps.setZero();
    c.Eps(0, 0) = 1.0;
    c.Eps(1, 1) = -1.0;
    c.Eps(2, 2) = -1.0;
    c.Eps(3, 3) = 1.0;

    c.U4 = u2n(2);

    const double s = 1.0 / std::sqrt(2.0);
    c.V.setZero();
    c.V(0, 0) = s;
    c.V(0, 2) = s;
    c.V(1, 1) = s;
    c.V(1, 3) = s;
    c.V(2, 0) = -s;
    c.V(2, 2) = s;
    c.V(3, 1) = -s;
    c.V(3, 3) = s;

    c.Vhat.setZero();
    c.Vhat(0, 0) = 1.0;
    c.Vhat(1, 2) = 1.0;
    c.Vhat(2, 1) = 1.0;
    c.Vhat(3, 3) = 1.0;
    return c;
}

}  // namespace

const StructuredConstants& constants() {
    static const StructuredConstants c = build_constants();
    return c;
}

MatX reversal(int n) {
    MatX r = MatX::Zero(n, n);
    for (int i = 0; i < n; ++i) r(i, n - 1 - i) = 1.0;
    return r;
}

MatX u2n(int n) {
    const cplx i(0.0, 1.0);
    const double s = 1.0 / std::sqrt(2.0);
    MatX u = MatX::Zero(2 * n, 2 * n);
    MatX rn = reversal(n);
    u.topLeftCorner(n, n) = s * MatX::Identity(n, n);
    u.topRightCorner(n, n) = s * rn;
    u.bottomLeftCorner(n, n) = s * i * rn;
    u.bottomRightCorner(n, n) = -s * i * MatX::Identity(n, n);
    return u;
}

Mat4 alpha_scaling(double alpha) {
    Mat4 d = Mat4::Zero();
    d(0, 0) = 1.0;
    d(1, 1) = alpha;
    d(2, 2) = alpha * alpha;
    d(3, 3) = alpha * alpha * alpha;
    return d;
}

Mat4 exp_Omega(cplx z) {
    const auto& c = constants();
    Mat4 e = Mat4::Zero();
    for (int j = 0; j < 4; ++j) e(j, j) = std::exp(c.omega[j] * z);
    return e;
}

Mat4 exp_eps_Omega(cplx z) {
    const auto& c = constants();
    static const double eps[4] = {1.0, -1.0, -1.0, 1.0};
    Mat4 e = Mat4::Zero();
    for (int j = 0; j < 4; ++j) e(j, j) = std::exp(eps[j] * c.omega[j] * z);
    return e;
}

Vec4 y_vector(const BeamParams& params, double x) {
    const auto& c = constants();
    Vec4 y;
    for (int j = 0; j < 4; ++j) y(j) = std::exp(c.omega[j] * params.alpha * x);
    return y;
}

Mat4 wronskian_W(const BeamParams& params, double x) {
    const auto& c = constants();
    return alpha_scaling(params.alpha) * c.W0 * exp_Omega(params.alpha * x);
}

Mat4 wronskian_W_inv(const BeamParams& params, double x) {
    const auto& c = constants();
    return 0.25 * exp_Omega(-params.alpha * x) * c.W0.adjoint() *
           alpha_scaling(1.0 / params.alpha);
}

bool is_pibar(const MatX& a, double tol) {
    const auto n = a.rows();
    if (n != a.cols() || n % 2 != 0) return false;
    MatX r = reversal(static_cast<int>(n));
    return max_abs(MatX(r * a.conjugate() * r - a)) <= tol;
}

RMatX pibar_to_real(const MatX& a) {
    if (!is_pibar(a, 1e-10)) throw NotInPibar();
    const int n = static_cast<int>(a.rows()) / 2;
    MatX u = u2n(n);
    MatX b = u.conjugate() * a * u.transpose();
    const double imag = b.imag().cwiseAbs().maxCoeff();
    if (imag > 1e-10 * (1.0 + max_abs(b)))
        throw NumericalError("pibar_to_real: residual imaginary part " + std::to_string(imag));
    return b.real();
}

MatX real_to_pibar(const RMatX& b) {
    const int n = static_cast<int>(b.rows()) / 2;
    MatX u = u2n(n);
    return u.transpose() * b.cast<cplx>() * u.conjugate();
}

cplx chi(cplx lambda, double k) {
    if (std::abs(lambda) < 1e-300) throw DegenerateLambda("chi: lambda = 0");
    if (std::abs(lambda * k - 1.0) <= 1e-14) throw DegenerateLambda("chi: lambda = 1/k");
    const cplx w = 1.0 - 1.0 / (lambda * k);
    const double r = std::abs(w);
    double theta = std::arg(w);
    if (theta < 0.0) theta += 2.0 * std::acos(-1.0);
    return std::pow(r, 0.25) * std::polar(1.0, theta / 4.0);
}

cplx chi_inverse(cplx kappa, double k) {
    return 1.0 / (k * (1.0 - kappa * kappa * kappa * kappa));
}

}  // namespace beamspec
