#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "beamspec/existence.hpp"
#include "beamspec/nystrom.hpp"

using namespace beamspec;

namespace {

const BeamParams kParams{1.0, 1.0, 1.0};

/// 1 must be an eigenvalue of G * Y(l) at a realized eigenvalue.
double unit_eigenvalue_defect(const Mat4& g, double lambda) {
    const Mat4 gy = g * Y_matrix(lambda, kParams.l, kParams);
    Eigen::ComplexEigenSolver<Mat4> solver(gy, false);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i) best = std::min(best, std::abs(solver.eigenvalues()(i) - 1.0));
    return best;
}

bool near_base_spectrum(double lambda) { return x_margin(lambda, kParams.l, kParams) < 1e-6; }

}  // namespace

TEST_CASE("rank-one preimage") {
    SUBCASE("identity image of a basis vector") {
        const RMat4 g = rank_one_inverse_image(RMat4::Identity(), RVec4::Unit(0));
        RMat4 expect = RMat4::Zero();
        expect(0, 0) = 1.0;
        CHECK((g - expect).cwiseAbs().maxCoeff() < 1e-15);
    }
    SUBCASE("maps the image back exactly") {
        std::mt19937_64 rng(137);
        std::normal_distribution<double> gauss;
        for (int t = 0; t < 100; ++t) {
            RMat4 g0;
            RVec4 r;
            for (int i = 0; i < 4; ++i) {
                r(i) = gauss(rng);
                for (int j = 0; j < 4; ++j) g0(i, j) = gauss(rng);
            }
            if ((g0 * r).norm() < 1e-6) continue;
            const RMat4 g = rank_one_inverse_image(g0, r);
            CHECK((g * (g0 * r) - r).cwiseAbs().maxCoeff() <= 1e-12 * r.cwiseAbs().maxCoeff());
        }
    }
    SUBCASE("zero map is rejected") {
        CHECK_THROWS_AS(rank_one_inverse_image(RMat4::Zero(), RVec4::Unit(1)), ZeroImage);
    }
}

TEST_CASE("eigenvalue realization pipeline") {
    SUBCASE("inside the unit interval") {
        const ConstructionResult r = construct_bc_for_eigenvalue(0.5, kParams);
        CHECK(r.bc.is_real);
        CHECK(is_wellposed(r.bc, kParams));
        CHECK(is_pibar(r.g, 1e-10));
        CHECK(r.point.residual <= 1e-8);
        CHECK(unit_eigenvalue_defect(r.g, 0.5) <= 1e-8);
    }
    SUBCASE("negative eigenvalue: the operator need not be positive") {
        const ConstructionResult r = construct_bc_for_eigenvalue(-1.0, kParams);
        CHECK(r.bc.is_real);
        CHECK(std::abs(char_det_Y(r.bc, kParams, -1.0)) <= 1e-8);
        const auto evs = nystrom_spectrum(r.bc, kParams, 400, 24);
        double best = std::numeric_limits<double>::infinity();
        for (const cplx& ev : evs) best = std::min(best, std::abs(ev - cplx(-1.0)));
        CHECK(best <= 1e-4);
    }
    SUBCASE("intrinsic eigenvalue above one: the operator need not be contractive") {
        const ConstructionResult r = construct_bc_for_eigenvalue(3.0, kParams);
        CHECK(r.bc.is_real);
        CHECK(3.0 * kParams.k > 1.0);
        const auto evs = nystrom_spectrum(r.bc, kParams, 400, 24);
        double best = std::numeric_limits<double>::infinity();
        for (const cplx& ev : evs) best = std::min(best, std::abs(ev - cplx(3.0)));
        CHECK(best / 3.0 <= 1e-4);
    }
    SUBCASE("the polynomial point itself is realizable") {
        const ConstructionResult r = construct_bc_for_eigenvalue(1.0 / kParams.k, kParams);
        CHECK(r.bc.is_real);
        CHECK(r.point.residual <= 1e-10);
        const auto evs = nystrom_spectrum(r.bc, kParams, 400, 24);
        double best = std::numeric_limits<double>::infinity();
        for (const cplx& ev : evs) best = std::min(best, std::abs(ev - cplx(1.0)));
        CHECK(best <= 1e-6);
    }
    SUBCASE("rejects base-spectrum and zero targets") {
        const double mu1 = spec_Q(kParams, 1)[0].mu;
        CHECK_THROWS_AS(construct_bc_for_eigenvalue(mu1, kParams), InSpecQ);
        CHECK_THROWS_AS(construct_bc_for_eigenvalue(0.0, kParams), ZeroLambda);
    }
}

TEST_CASE("realization sweep over the real line") {
    std::vector<double> targets;
    for (int i = 0; i < 7; ++i) targets.push_back(-2.0 + i * (2.0 - 0.01) / 6.0);
    for (int i = 0; i < 7; ++i) targets.push_back(1.05 + i * (4.0 - 1.05) / 6.0);
    for (int i = 0; i < 6; ++i) targets.push_back(0.01 + i * (0.95 - 0.01) / 5.0);

    int verified_end_to_end = 0;
    for (double lambda : targets) {
        if (std::abs(lambda) < 1e-3 || near_base_spectrum(lambda)) continue;
        const ConstructionResult r = construct_bc_for_eigenvalue(lambda, kParams);
        CHECK(r.bc.is_real);
        CHECK(is_wellposed(r.bc, kParams));
        CHECK(r.point.residual <= 1e-8);
        CHECK(unit_eigenvalue_defect(r.g, lambda) <= 1e-8);
        // spot-check the spectrum containment end to end on a few targets
        if (verified_end_to_end < 4 && std::abs(lambda) >= 0.05 && std::abs(lambda) <= 4.0) {
            const auto evs = nystrom_spectrum(r.bc, kParams, 400, 24);
            double best = std::numeric_limits<double>::infinity();
            for (const cplx& ev : evs) best = std::min(best, std::abs(ev - cplx(lambda)));
            CHECK(best / std::abs(lambda) <= 1e-4);
            ++verified_end_to_end;
        }
    }
    CHECK(verified_end_to_end == 4);
}
