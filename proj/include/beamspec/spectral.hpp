#pragma once

#include <optional>
#include <vector>

#include "beamspec/greens.hpp"

namespace beamspec {

/// An eigenvalue candidate with its null direction and the relative residual
/// (sigma_min / sigma_max) of the characteristic matrix.
struct SpectralPoint {
    cplx lambda;
    Vec4 null_vector = Vec4::Zero();
    double residual = 0.0;
    int multiplicity = 1;
};

enum class EigenBranch : int { Generic, Degenerate };

/// Fundamental solutions of the eigen-ODE u'''' + (1 - 1/(lambda k)) a^4 u = 0:
/// exponentials e^{omega_j kappa a x} off the polynomial point, monomials
/// x^j / j! at lambda = 1/k.
struct EigenBasis {
    cplx lambda;
    EigenBranch branch = EigenBranch::Generic;
    cplx kappa = 0.0;  ///< defined for the Generic branch
    BeamParams params;

    static EigenBasis make(cplx lambda, const BeamParams& params);  // throws ZeroLambda

    Vec4 y(double x) const;
    Mat4 wronskian(double x) const;
};

/// Dispatch threshold for the polynomial branch: |lambda k - 1| <= this.
inline constexpr double kDegenerateBand = 1e-12;

/// p_n(z) = sum_{r=0}^{n} omega_1^(n-r) z^r / r!, n = 0..3.
cplx p_poly(int n, double z);

/// The 4x4 polynomial-branch core matrix built from p_n.
Mat4 p_matrix(double z);

/// 2x2 diagonal blocks of V P(z) Vhat / sqrt(2).
Mat2 p_plus(double z);
Mat2 p_minus(double z);

/// Dimensionless core X(z, kappa); X_matrix(lambda, x) = X(alpha x, chi(lambda)).
Mat4 x_matrix_zk(cplx z, cplx kappa);

/// Branch-dispatched closed form of the eigencondition matrix. Throws ZeroLambda.
Mat4 X_matrix(cplx lambda, double x, const BeamParams& params);

/// The defining two-term form (selector blocks times W^-1 W_lambda at +-x);
/// agrees with X_matrix and is kept as an independent route for tests.
Mat4 X_matrix_direct(cplx lambda, double x, const BeamParams& params);

/// Y = X(-x) X(x)^-1 - I. Throws SingularX when X(x) has relative smallest
/// singular value below 1e-8 (lambda at or near the base spectrum), ZeroLambda.
Mat4 Y_matrix(cplx lambda, double x, const BeamParams& params);

/// Relative invertibility margin sigma_min/sigma_max of X_lambda(x).
double x_margin(cplx lambda, double x, const BeamParams& params);

/// X at the two endpoints, with the Y ratio attached only when X(l) is
/// comfortably invertible (relative margin above 1e-8).
struct EigenMatrices {
    cplx lambda;
    Mat4 x_at_l;
    Mat4 x_at_minus_l;
    std::optional<Mat4> y;
};

EigenMatrices eigen_matrices(cplx lambda, const BeamParams& params);  // throws ZeroLambda

/// Characteristic matrix C = G (X(l) - X(-l)) + X(l) whose null vectors are
/// the eigenfunction coefficient vectors.
Mat4 char_matrix(const Mat4& g_gamma, cplx lambda, const BeamParams& params);

/// Singularity measure of the characteristic matrix at lambda: the returned
/// point carries the null direction and the equilibrated relative smallest
/// singular value as residual.
SpectralPoint characteristic_point(const Mat4& g_gamma, cplx lambda, const BeamParams& params);

/// det C; zero iff lambda is an eigenvalue of the bc's operator.
/// Throws NotWellPosed, ZeroLambda.
cplx char_det(const BoundaryCondition& bc, const BeamParams& params, cplx lambda);

/// det(G Y(l) - I); same zero set off the base spectrum, real-valued for real
/// bc and real lambda. Throws NotWellPosed, SingularX, ZeroLambda.
cplx char_det_Y(const BoundaryCondition& bc, const BeamParams& params, cplx lambda);

struct ScanResult {
    std::vector<SpectralPoint> points;     ///< sorted by decreasing real part
    std::vector<double> unresolved;        ///< |f| dips without a sign change
};

/// Scans [a, b] for real eigenvalues of a real well-posed bc: brackets sign
/// changes of det(G Y - I), locates base-spectrum points separately through
/// det X and tests them with the direct characteristic matrix, then polishes
/// each root against the sigma_min objective. grid is the minimum number of
/// samples. Throws NotWellPosed.
ScanResult scan_real_spectrum(const BoundaryCondition& bc, const BeamParams& params, double a,
                              double b, int grid = 2000);

/// u = y_lambda^T c sampled on the rule.
GridFunction eigenfunction(const SpectralPoint& point, const BeamParams& params,
                           std::shared_ptr<const QuadratureRule> rule);

/// Best-effort local refinement of a complex eigenvalue seed (e.g. taken from
/// the discretization oracle of a complex condition): shrinking pattern
/// search on the characteristic-matrix residual.
SpectralPoint polish_complex(const Mat4& g_gamma, cplx seed, const BeamParams& params);

struct QRootPair {
    double mu = 0.0;
    double nu = 0.0;
    double mu_residual = 0.0;
    double nu_residual = 0.0;
};

/// The 2n largest eigenvalues of the reference operator, as ordered pairs
/// (mu_n, nu_n); k*mu_n and k*nu_n depend only on the intrinsic length.
std::vector<QRootPair> spec_Q(const BeamParams& params, int count);

}  // namespace beamspec
