#include "beamspec/nystrom.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace beamspec {

namespace {

/// A = scale * [lower: -Y G^- Y^T, upper: Y G^+ Y^T] with columns weighted;
/// Y rows are the basis vector at each node. The two branches agree on the
/// diagonal, where the upper form is used.
MatX assemble(const GreensRep& rep, const BeamParams& params, const QuadratureRule& rule) {
    const int n = rule.size();
    Eigen::Matrix<cplx, Eigen::Dynamic, 4> ybas(n, 4);
    for (int i = 0; i < n; ++i) ybas.row(i) = y_vector(params, rule.nodes[i]).transpose();
    const MatX upper = ybas * rep.g_plus * ybas.transpose();
    const MatX lower = ybas * rep.g_minus * ybas.transpose();
    const double scale = params.alpha / (4.0 * params.k);
    MatX a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cplx g = (i <= j) ? upper(i, j) : -lower(i, j);
            a(i, j) = scale * g * rule.weights[j];
        }
    return a;
}

bool nearly_real(const MatX& a) {
    return a.imag().cwiseAbs().maxCoeff() <= 1e-10 * (1.0 + a.real().cwiseAbs().maxCoeff());
}

std::vector<cplx> eigenvalues_sorted(const MatX& a) {
    std::vector<cplx> evs;
    if (nearly_real(a)) {
        Eigen::EigenSolver<RMatX> solver(a.real(), /*computeEigenvectors=*/false);
        const auto& v = solver.eigenvalues();
        evs.assign(v.data(), v.data() + v.size());
    } else {
        Eigen::ComplexEigenSolver<MatX> solver(a, /*computeEigenvectors=*/false);
        const auto& v = solver.eigenvalues();
        evs.assign(v.data(), v.data() + v.size());
    }
    std::sort(evs.begin(), evs.end(), [](cplx u, cplx v) {
        if (std::abs(u) != std::abs(v)) return std::abs(u) > std::abs(v);
        return u.imag() > v.imag();
    });
    return evs;
}

/// Unit eigenvector for an already-computed eigenvalue via one inverse
/// iteration step from a fixed start (enough for residual reporting).
double eigen_residual(const MatX& a, cplx lambda) {
    const int n = static_cast<int>(a.rows());
    MatX shifted = a - lambda * MatX::Identity(n, n);
    // Tiny diagonal regularization keeps the solve well-defined at the exact
    // eigenvalue; it perturbs the residual at the same order it measures.
    const double eps = 1e-14 * (1.0 + a.cwiseAbs().maxCoeff());
    shifted.diagonal().array() += cplx(eps, 0.0);
    Eigen::PartialPivLU<MatX> lu(shifted);
    VecX v = VecX::Ones(n) / std::sqrt(static_cast<double>(n));
    for (int it = 0; it < 2; ++it) {
        v = lu.solve(v);
        v /= v.norm();
    }
    return (a * v - lambda * v).norm();
}

}  // namespace

MatX nystrom_matrix(const BoundaryCondition& bc, const BeamParams& params,
                    const QuadratureRule& rule) {
    return assemble(greens_matrices(bc, params), params, rule);
}

std::vector<cplx> nystrom_spectrum(const BoundaryCondition& bc, const BeamParams& params, int n,
                                   int top) {
    const QuadratureRule rule = QuadratureRule::composite_gauss(params.l, n);
    std::vector<cplx> evs = eigenvalues_sorted(nystrom_matrix(bc, params, rule));
    if (static_cast<int>(evs.size()) > top) evs.resize(top);
    return evs;
}

std::vector<NystromEigen> nystrom_report(const BoundaryCondition& bc, const BeamParams& params,
                                         int n, int top) {
    const QuadratureRule rule = QuadratureRule::composite_gauss(params.l, n);
    const QuadratureRule rule2 = QuadratureRule::composite_gauss(params.l, 2 * n);
    const MatX a = nystrom_matrix(bc, params, rule);
    const std::vector<cplx> evs = eigenvalues_sorted(a);
    const std::vector<cplx> evs2 = eigenvalues_sorted(nystrom_matrix(bc, params, rule2));

    std::vector<NystromEigen> report;
    const int count = std::min<int>(top, static_cast<int>(evs.size()));
    report.reserve(count);
    for (int i = 0; i < count; ++i) {
        NystromEigen e;
        e.lambda = evs[i];
        e.residual = eigen_residual(a, evs[i]);
        double best = std::numeric_limits<double>::infinity();
        for (const cplx& other : evs2) best = std::min(best, std::abs(other - evs[i]));
        e.convergence_delta = best / std::max(std::abs(evs[i]), 1e-300);
        report.push_back(e);
    }
    return report;
}

}  // namespace beamspec
