#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "beamspec/representation.hpp"
#include "beamspec/spectral.hpp"

using namespace beamspec;

namespace {

const BeamParams kParams{1.0, 1.0, 1.0};

Mat4 random_mat4(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Mat4 m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = cplx(gauss(rng), gauss(rng));
    return m;
}

Mat4 random_pibar4(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    RMatX b(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) b(i, j) = gauss(rng);
    return Mat4(real_to_pibar(b));
}

}  // namespace

TEST_CASE("representation of the reference condition is zero") {
    CHECK(max_abs(gamma(named_bc(NamedBC::Q, kParams), kParams)) < 1e-12);
    for (const BeamParams p : {BeamParams{0.5, 2.0, 1.0}, BeamParams{1.3, 0.7, 4.0}}) {
        CHECK(max_abs(gamma(named_bc(NamedBC::Q, p), p)) < 1e-12);
    }
}

TEST_CASE("representation depends only on the equivalence class") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 50; ++t) {
        const BoundaryCondition m = random_wellposed(rng, kParams, false);
        Mat4 p = random_mat4(rng);
        while (std::abs(p.determinant()) < 1e-3) p = random_mat4(rng);
        const BoundaryCondition pm = BoundaryCondition::from_matrix(Mat48(p * m.M));
        CHECK(max_abs(Mat4(gamma(m, kParams) - gamma(pm, kParams))) < 1e-9);
    }
}

TEST_CASE("two routes to the representation agree") {
    // direct reduced-block formula vs composition through the g_plus offset
    std::mt19937_64 rng(37);
    const auto& c = constants();
    const Mat4 gq_plus = greens_matrices(named_bc(NamedBC::Q, kParams), kParams).g_plus;
    const Mat4 inv_ol2_eps = (c.Omega * c.L2).inverse() * c.Eps;
    for (int t = 0; t < 20; ++t) {
        const BoundaryCondition bc = random_wellposed(rng, kParams, t % 2 == 0);
        const Mat4 direct = gamma(bc, kParams);
        const Mat4 via_pair = (greens_matrices(bc, kParams).g_plus - gq_plus) * inv_ol2_eps;
        CHECK(max_abs(Mat4(direct - via_pair)) < 1e-10);
    }
    const GreensRep rep = gamma_rep(named_bc(NamedBC::Clamped, kParams), kParams);
    CHECK(max_abs(Mat4(rep.g_gamma - gamma(named_bc(NamedBC::Clamped, kParams), kParams))) == 0.0);
}

TEST_CASE("clamped representation regression fixture") {
    // frozen from a converged evaluation at l = alpha = k = 1
    const Mat4 g = gamma(named_bc(NamedBC::Clamped, kParams), kParams);
    CHECK(is_pibar(g, 1e-10));
    CHECK(std::abs(g(0, 0) - cplx(0.26114699944817987, 0.027816338769055649)) < 1e-10);
    CHECK(std::abs(g(0, 1) - cplx(-0.34944116492793847, -0.34944116492793897)) < 1e-10);
    CHECK(std::abs(g(0, 2) - cplx(-0.38853184672178737, -0.054493146361979744)) < 1e-10);
    CHECK(std::abs(g(0, 3) - cplx(0.17837424469714122, 0.17837424469714216)) < 1e-10);
    CHECK(std::abs(g(1, 0) - cplx(-0.34944116492793920, 0.34944116492793870)) < 1e-10);
    CHECK(std::abs(g(1, 1) - cplx(0.26114699944818015, -0.027816338769054948)) < 1e-10);
}

TEST_CASE("inverse representation") {
    std::mt19937_64 rng(41);
    SUBCASE("zero maps to the reference class") {
        const BoundaryCondition bc = gamma_inverse(Mat4::Zero(), kParams);
        CHECK(is_wellposed(bc, kParams));
        CHECK(equivalent(bc, named_bc(NamedBC::Q, kParams), kParams, 1e-9));
    }
    SUBCASE("round-trip over random matrices") {
        for (int t = 0; t < 100; ++t) {
            const Mat4 g = random_mat4(rng);
            const BoundaryCondition bc = gamma_inverse(g, kParams);
            CHECK(is_wellposed(bc, kParams));
            CHECK(max_abs(Mat4(gamma(bc, kParams) - g)) <= 1e-9 * std::max(1.0, max_abs(g)));
        }
    }
    SUBCASE("reduced matrix of the representative is the identity") {
        const Mat4 g = random_mat4(rng);
        const TildeDecomposition t = tilde(gamma_inverse(g, kParams), kParams);
        CHECK(max_abs(Mat4(t.tilde - Mat4::Identity())) < 1e-10);
    }
    SUBCASE("clamped image round-trips to an equivalent condition") {
        const BoundaryCondition clamped = named_bc(NamedBC::Clamped, kParams);
        const BoundaryCondition back = gamma_inverse(gamma(clamped, kParams), kParams);
        CHECK(equivalent(back, clamped, kParams, 1e-9));
    }
}

TEST_CASE("real-branch inverse representation") {
    std::mt19937_64 rng(43);
    SUBCASE("zero gives a real representative of the reference class") {
        const BoundaryCondition bc = gamma_inverse_real(Mat4::Zero(), kParams);
        CHECK(bc.is_real);
        CHECK(equivalent(bc, named_bc(NamedBC::Q, kParams), kParams, 1e-9));
    }
    SUBCASE("random pibar inputs give exactly real conditions that round-trip") {
        for (int t = 0; t < 100; ++t) {
            const Mat4 g = random_pibar4(rng);
            const BoundaryCondition bc = gamma_inverse_real(g, kParams);
            CHECK(bc.is_real);
            CHECK(bc.M.imag().cwiseAbs().maxCoeff() == 0.0);
            CHECK(is_wellposed(bc, kParams));
            CHECK(max_abs(Mat4(gamma(bc, kParams) - g)) <= 1e-9 * std::max(1.0, max_abs(g)));
        }
    }
    SUBCASE("the parity pattern is realizable") {
        const BoundaryCondition bc = gamma_inverse_real(constants().Eps, kParams);
        CHECK(bc.is_real);
        CHECK(is_wellposed(bc, kParams));
    }
    SUBCASE("rejects inputs outside the algebra") {
        const cplx unit_i(0.0, 1.0);
        CHECK_THROWS_AS(gamma_inverse_real(Mat4(unit_i * Mat4::Identity()), kParams), NotInPibar);
    }
}

TEST_CASE("pair map and its reconstruction") {
    const auto& c = constants();
    SUBCASE("reference condition gives the sparse pair") {
        const auto [gm, gp] = gamma_pm(named_bc(NamedBC::Q, kParams), kParams);
        Mat4 egm = Mat4::Zero(), egp = Mat4::Zero();
        egm(1, 3) = c.omega[1];
        egm(2, 0) = c.omega[2];
        egp(0, 2) = c.omega[0];
        egp(3, 1) = c.omega[3];
        CHECK(max_abs(Mat4(gm - egm)) < 1e-12);
        CHECK(max_abs(Mat4(gp - egp)) < 1e-12);
    }
    SUBCASE("pair sums to the fixed pattern and reconstructs the class") {
        std::mt19937_64 rng(47);
        for (int t = 0; t < 30; ++t) {
            const BoundaryCondition bc = random_wellposed(rng, kParams, false);
            const auto [gm, gp] = gamma_pm(bc, kParams);
            CHECK(max_abs(Mat4(gm + gp - c.Omega * c.L2)) < 1e-10);
            const BoundaryCondition rebuilt = bc_from_pm(gm, gp, kParams);
            const auto [gm2, gp2] = gamma_pm(rebuilt, kParams);
            CHECK(max_abs(Mat4(gm - gm2)) < 1e-9);
            CHECK(max_abs(Mat4(gp - gp2)) < 1e-9);
            CHECK(equivalent(bc, rebuilt, kParams, 1e-9));
        }
    }
    SUBCASE("throws on ill-posed input") {
        CHECK_THROWS_AS(gamma_pm(BoundaryCondition::from_matrix(Mat48::Zero()), kParams),
                        NotWellPosed);
    }
}

TEST_CASE("real well-posed conditions map into the pibar algebra") {
    std::mt19937_64 rng(53);
    for (int t = 0; t < 100; ++t) {
        const BoundaryCondition bc = random_wellposed(rng, kParams, true);
        CHECK(is_pibar(gamma(bc, kParams), 1e-9));
    }
}

TEST_CASE("injectivity on classes") {
    std::mt19937_64 rng(59);
    for (int t = 0; t < 20; ++t) {
        const BoundaryCondition a = random_wellposed(rng, kParams, false);
        const BoundaryCondition b = random_wellposed(rng, kParams, false);
        const bool same_gamma = max_abs(Mat4(gamma(a, kParams) - gamma(b, kParams))) < 1e-9;
        CHECK(same_gamma == equivalent(a, b, kParams, 1e-9));
    }
}

TEST_CASE("boundary form through the representation") {
    // For solutions of the eigen-ODE, M B[u] equals tilde(M) times the
    // representation-side boundary expression, so the two vanish together.
    std::mt19937_64 rng(61);
    std::normal_distribution<double> gauss;
    const auto& c = constants();
    Mat4 d0110 = Mat4::Zero();
    d0110(1, 1) = d0110(2, 2) = 1.0;
    Mat4 d1001 = Mat4::Zero();
    d1001(0, 0) = d1001(3, 3) = 1.0;
    for (int t = 0; t < 30; ++t) {
        const BoundaryCondition bc = random_wellposed(rng, kParams, false);
        cplx lam(2.0 * gauss(rng), 2.0 * gauss(rng));
        if (std::abs(lam) < 0.05 || std::abs(lam - 1.0) < 0.05) lam += 3.0;
        const EigenBasis basis = EigenBasis::make(lam, kParams);
        Vec4 cv;
        for (int j = 0; j < 4; ++j) cv(j) = cplx(gauss(rng), gauss(rng));
        const Vec4 bminus = basis.wronskian(-kParams.l) * cv;
        const Vec4 bplus = basis.wronskian(kParams.l) * cv;
        const Vec4 lhs = bc.minus() * bminus + bc.plus() * bplus;
        const Mat4 g = gamma(bc, kParams);
        const Vec4 wm = wronskian_W_inv(kParams, -kParams.l) * bminus;
        const Vec4 wp = wronskian_W_inv(kParams, kParams.l) * bplus;
        const Vec4 expr = g * c.Eps * (wp - wm) + d0110 * wm + d1001 * wp;
        const Vec4 rhs = tilde(bc, kParams).tilde * expr;
        const double scale = std::max({1.0, max_abs(lhs), max_abs(rhs)});
        CHECK(max_abs(Vec4(lhs - rhs)) <= 1e-8 * scale);
    }
}
