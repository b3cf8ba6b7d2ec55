#include "beamspec/verify.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "beamspec/existence.hpp"
#include "beamspec/json_io.hpp"
#include "beamspec/nystrom.hpp"

namespace beamspec {

namespace {

struct Check {
    std::string name;
    std::function<bool()> run;
};

Mat4 random_mat4(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Mat4 m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = cplx(gauss(rng), gauss(rng));
    return m;
}

Mat4 random_pibar(std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    RMatX b(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) b(i, j) = gauss(rng);
    return Mat4(real_to_pibar(b));
}

}  // namespace

int run_verification(std::ostream& out) {
    const BeamParams params{1.0, 1.0, 1.0};
    const auto& c = constants();
    const cplx unit_i(0.0, 1.0);
    std::mt19937_64 rng(0x5eed5eedULL);

    std::vector<Check> checks;

    checks.push_back({"quartic-root-identities", [&] {
        double worst = 0.0;
        for (int j = 0; j < 4; ++j) {
            worst = std::max(worst, std::abs(std::pow(c.omega[j], 4) + 1.0));
            worst = std::max(worst, std::abs(std::conj(c.omega[j]) - 1.0 / c.omega[j]));
            worst = std::max(worst, std::abs(unit_i * c.omega[j] - c.omega[(j + 1) % 4]));
        }
        worst = std::max(worst, max_abs(Mat4(c.Omega * c.Omega * c.Omega * c.Omega + Mat4::Identity())));
        worst = std::max(worst, max_abs(Mat4(c.Omega.conjugate() * c.Omega - Mat4::Identity())));
        return worst <= 1e-14;
    }});

    checks.push_back({"vandermonde-inverse", [&] {
        return max_abs(Mat4(c.W0 * (0.25 * c.W0.adjoint()) - Mat4::Identity())) <= 1e-14;
    }});

    checks.push_back({"reversal-conjugation", [&] {
        const double w1 = max_abs(Mat4(c.R4 * c.Omega - c.Omega.conjugate() * c.R4));
        const double w2 = max_abs(Mat4(c.W0 * c.R4 - c.W0.conjugate()));
        return std::max(w1, w2) <= 1e-14;
    }});

    checks.push_back({"shift-intertwining", [&] {
        const Mat4 lhs = c.L * c.Omega * c.L.inverse();
        const double w1 = max_abs(Mat4(lhs - unit_i * c.Omega));
        Mat4 di = Mat4::Zero();
        for (int j = 0; j < 4; ++j) di(j, j) = std::pow(unit_i, j);
        const double w2 = max_abs(Mat4(c.W0 * c.L.inverse() - di * c.W0));
        const double w3 = max_abs(Mat4(c.L2 * c.Omega + c.Omega * c.L2));
        return std::max({w1, w2, w3}) <= 1e-14;
    }});

    checks.push_back({"half-turn-reflects-basis", [&] {
        double worst = 0.0;
        for (double x : {-1.3, 0.2, 0.9}) {
            const Vec4 lhs = c.L2 * y_vector(params, x);
            worst = std::max(worst, max_abs(Vec4(lhs - y_vector(params, -x))));
        }
        return worst <= 1e-12;
    }});

    checks.push_back({"wronskian-closed-inverse", [&] {
        double worst = 0.0;
        for (double x : {-1.0, 0.3, 2.0}) {
            const Mat4 prod = wronskian_W(params, x) * wronskian_W_inv(params, x);
            worst = std::max(worst, max_abs(Mat4(prod - Mat4::Identity())));
            worst = std::max(worst, max_abs(Mat4(wronskian_W(params, x) * c.R4 -
                                                 wronskian_W(params, x).conjugate())));
        }
        return worst <= 1e-12;
    }});

    checks.push_back({"pibar-closure", [&] {
        for (int t = 0; t < 20; ++t) {
            const Mat4 a = random_pibar(rng), b = random_pibar(rng);
            if (!is_pibar(3.7 * a - 1.2 * b) || !is_pibar(a * b) || !is_pibar(a.transpose()))
                return false;
            if (std::abs(a.determinant()) > 1e-12 && !is_pibar(a.inverse(), 1e-8)) return false;
            const cplx det = a.determinant();
            if (std::abs(det.imag()) > 1e-10 * std::max(1.0, std::abs(det))) return false;
        }
        return is_pibar(c.Omega) && is_pibar(c.L2) && is_pibar(c.Eps);
    }});

    checks.push_back({"pibar-real-isomorphism", [&] {
        std::normal_distribution<double> gauss;
        for (int t = 0; t < 20; ++t) {
            RMatX b(4, 4);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) b(i, j) = gauss(rng);
            const MatX a = real_to_pibar(b);
            if (!is_pibar(a, 1e-12)) return false;
            if ((pibar_to_real(a) - b).cwiseAbs().maxCoeff() > 1e-12) return false;
        }
        const double w1 = max_abs(Mat4(c.U4.conjugate() - c.U4 * c.R4));
        const double w2 = max_abs(Mat4(c.U4 * c.U4.adjoint() - Mat4::Identity()));
        return std::max(w1, w2) <= 1e-14;
    }});

    checks.push_back({"branch-parameter-roundtrip", [&] {
        std::normal_distribution<double> gauss;
        for (int t = 0; t < 50; ++t) {
            const cplx lam(gauss(rng) * 2.0, gauss(rng) * 2.0);
            if (std::abs(lam) < 1e-3 || std::abs(lam - 1.0) < 1e-3) continue;
            const cplx kappa = chi(lam, 1.0);
            if (std::abs(chi_inverse(kappa, 1.0) - lam) > 1e-10 * std::abs(lam)) return false;
            const double arg = std::arg(kappa);
            if (arg < -1e-15 || arg >= std::acos(-1.0) / 2.0) return false;
        }
        return true;
    }});

    checks.push_back({"greens-pair-splitting", [&] {
        const Mat4 target = c.Omega * c.L2;
        for (int t = 0; t < 10; ++t) {
            const BoundaryCondition bc = random_wellposed(rng, params, t % 2 == 0);
            const GreensRep rep = greens_matrices(bc, params);
            if (max_abs(Mat4(rep.g_minus + rep.g_plus - target)) > 1e-10) return false;
        }
        return true;
    }});

    checks.push_back({"reference-condition-reduction", [&] {
        const BoundaryCondition q = named_bc(NamedBC::Q, params);
        const TildeDecomposition t = tilde(q, params);
        Eigen::PartialPivLU<Mat4> lu(t.tilde);
        Mat4 d0110 = Mat4::Zero();
        d0110(1, 1) = d0110(2, 2) = 1.0;
        Mat4 d1001 = Mat4::Zero();
        d1001(0, 0) = d1001(3, 3) = 1.0;
        const double w1 = max_abs(Mat4(lu.solve(t.tilde_minus) - d0110));
        const double w2 = max_abs(Mat4(lu.solve(t.tilde_plus) - d1001));
        const GreensRep rep = greens_matrices(q, params);
        Mat4 gm = Mat4::Zero(), gp = Mat4::Zero();
        gm(1, 3) = c.omega[1];
        gm(2, 0) = c.omega[2];
        gp(0, 2) = c.omega[0];
        gp(3, 1) = c.omega[3];
        const double w3 = max_abs(Mat4(rep.g_minus - gm));
        const double w4 = max_abs(Mat4(rep.g_plus - gp));
        const double w5 = max_abs(gamma(q, params));
        return std::max({w1, w2, w3, w4, w5}) <= 1e-10;
    }});

    checks.push_back({"kernel-closed-form-match", [&] {
        const BoundaryCondition q = named_bc(NamedBC::Q, params);
        const GreensRep rep = greens_matrices(q, params);
        double worst = 0.0;
        for (int i = 0; i <= 20; ++i)
            for (int j = 0; j <= 20; ++j) {
                const double x = -params.l + 2.0 * params.l * i / 20.0;
                const double xi = -params.l + 2.0 * params.l * j / 20.0;
                worst = std::max(worst, std::abs(kernel(rep, params, x, xi) -
                                                 closed_form_kernel(params, x, xi)));
            }
        return worst <= 1e-12;
    }});

    checks.push_back({"row-operation-invariance", [&] {
        for (int t = 0; t < 10; ++t) {
            const BoundaryCondition m = random_wellposed(rng, params, false);
            Mat4 p = random_mat4(rng);
            while (std::abs(p.determinant()) < 1e-3) p = random_mat4(rng);
            const BoundaryCondition pm = BoundaryCondition::from_matrix(Mat48(p * m.M));
            if (!equivalent(m, pm, params, 1e-9)) return false;
            if (max_abs(Mat4(gamma(m, params) - gamma(pm, params))) > 1e-9) return false;
        }
        return true;
    }});

    checks.push_back({"real-bc-reality-chain", [&] {
        for (int t = 0; t < 20; ++t) {
            const BoundaryCondition bc = random_wellposed(rng, params, true);
            const GreensRep rep = greens_matrices(bc, params);
            if (!is_pibar(rep.g_minus, 1e-9) || !is_pibar(rep.g_plus, 1e-9)) return false;
            if (!is_pibar(gamma(bc, params), 1e-9)) return false;
        }
        return true;
    }});

    checks.push_back({"x-shift-symmetry", [&] {
        std::normal_distribution<double> gauss;
        for (int t = 0; t < 20; ++t) {
            const cplx z(gauss(rng), gauss(rng));
            const cplx kappa(gauss(rng), gauss(rng));
            const Mat4 lhs = x_matrix_zk(z, unit_i * kappa);
            const Mat4 rhs = x_matrix_zk(z, kappa) * c.L.inverse();
            if (max_abs(Mat4(lhs - rhs)) > 1e-10 * std::max(1.0, max_abs(rhs))) return false;
        }
        return true;
    }});

    checks.push_back({"x-conjugation-symmetry", [&] {
        std::normal_distribution<double> gauss;
        for (int t = 0; t < 20; ++t) {
            const double z = gauss(rng);
            const cplx kappa(gauss(rng), gauss(rng));
            const Mat4 lhs = c.R4 * x_matrix_zk(z, kappa).conjugate() * c.R4;
            const Mat4 rhs = x_matrix_zk(z, std::conj(kappa));
            if (max_abs(Mat4(lhs - rhs)) > 1e-10 * std::max(1.0, max_abs(rhs))) return false;
        }
        return true;
    }});

    checks.push_back({"x-real-line-membership", [&] {
        for (double lam : {-2.3, -0.4, 1.7, 3.0}) {
            if (!is_pibar(X_matrix(lam, 0.7, params), 1e-9)) return false;
        }
        for (double lam : {0.3, 0.8, 0.05}) {
            const Mat4 lhs = c.R4 * X_matrix(lam, 0.7, params).conjugate() * c.R4;
            const Mat4 rhs = X_matrix(lam, 0.7, params) * c.L;
            if (max_abs(Mat4(lhs - rhs)) > 1e-9 * std::max(1.0, max_abs(rhs))) return false;
        }
        return true;
    }});

    checks.push_back({"x-difference-identity", [&] {
        std::normal_distribution<double> gauss;
        for (int t = 0; t < 10; ++t) {
            const cplx lam(1.5 + gauss(rng), gauss(rng));
            const double x = 0.3 + 0.5 * std::abs(gauss(rng));
            const EigenBasis basis = EigenBasis::make(lam, params);
            const Mat4 lhs = X_matrix(lam, x, params) - X_matrix(lam, -x, params);
            const Mat4 rhs = c.Eps * (wronskian_W_inv(params, x) * basis.wronskian(x) -
                                      wronskian_W_inv(params, -x) * basis.wronskian(-x));
            if (max_abs(Mat4(lhs - rhs)) > 1e-10 * std::max(1.0, max_abs(rhs))) return false;
        }
        return true;
    }});

    checks.push_back({"x-two-route-agreement", [&] {
        std::normal_distribution<double> gauss;
        for (int t = 0; t < 10; ++t) {
            const cplx lam(gauss(rng), gauss(rng));
            if (std::abs(lam) < 0.05 || std::abs(lam - 1.0) < 0.05) continue;
            const double x = gauss(rng);
            const Mat4 a = X_matrix(lam, x, params);
            const Mat4 b = X_matrix_direct(lam, x, params);
            if (max_abs(Mat4(a - b)) > 1e-10 * std::max(1.0, max_abs(a))) return false;
        }
        const Mat4 a = X_matrix(1.0, 0.8, params);
        const Mat4 b = X_matrix_direct(1.0, 0.8, params);
        return max_abs(Mat4(a - b)) <= 1e-10 * std::max(1.0, max_abs(a));
    }});

    checks.push_back({"polynomial-branch-factorization", [&] {
        for (double z : {0.4, 1.1, 2.5}) {
            const Mat4 lhs = c.V * p_matrix(z) * c.Vhat;
            Mat4 rhs = Mat4::Zero();
            rhs.topLeftCorner<2, 2>() = p_plus(z);
            rhs.bottomRightCorner<2, 2>() = p_minus(z);
            rhs *= std::sqrt(2.0);
            if (max_abs(Mat4(lhs - rhs)) > 1e-10 * std::max(1.0, max_abs(rhs))) return false;
            const cplx det_x = X_matrix(1.0, z, params).determinant();
            const cplx expect = -std::exp(-2.0 * std::sqrt(2.0) * z) / 64.0 *
                                p_plus(z).determinant() * p_minus(z).determinant();
            if (std::abs(det_x - expect) > 1e-10 * std::max(1.0, std::abs(expect))) return false;
            if (!is_pibar(MatX(p_plus(-z) * p_plus(z).inverse()), 1e-9)) return false;
            if (!is_pibar(MatX(p_minus(-z) * p_minus(z).inverse()), 1e-9)) return false;
        }
        return true;
    }});

    checks.push_back({"y-reality-and-nonvanishing", [&] {
        for (double lam : {-1.5, -0.2, 0.33, 0.71, 2.0, 1.0}) {
            if (x_margin(lam, params.l, params) < 1e-8) continue;
            const Mat4 y = Y_matrix(lam, params.l, params);
            if (!is_pibar(y, 1e-9)) return false;
            if (max_abs(y) <= 1e-8) return false;
        }
        std::normal_distribution<double> gauss;
        for (int t = 0; t < 10; ++t) {
            const cplx lam(gauss(rng), 0.3 + std::abs(gauss(rng)));
            const Mat4 lhs = c.R4 * Y_matrix(lam, params.l, params).conjugate() * c.R4;
            const Mat4 rhs = Y_matrix(std::conj(lam), params.l, params);
            if (max_abs(Mat4(lhs - rhs)) > 1e-9 * std::max(1.0, max_abs(rhs))) return false;
        }
        return true;
    }});

    checks.push_back({"gamma-bijection-roundtrip", [&] {
        for (int t = 0; t < 20; ++t) {
            const Mat4 g = random_mat4(rng);
            const BoundaryCondition bc = gamma_inverse(g, params);
            if (!is_wellposed(bc, params)) return false;
            if (max_abs(Mat4(gamma(bc, params) - g)) > 1e-9 * std::max(1.0, max_abs(g)))
                return false;
        }
        for (int t = 0; t < 20; ++t) {
            const Mat4 g = random_pibar(rng);
            const BoundaryCondition bc = gamma_inverse_real(g, params);
            if (!bc.is_real) return false;
            if (max_abs(Mat4(gamma(bc, params) - g)) > 1e-9 * std::max(1.0, max_abs(g)))
                return false;
        }
        return true;
    }});

    checks.push_back({"eigencondition-boundary-form", [&] {
        // M B[u] = tilde(M) * (G-form boundary expression) for solutions of
        // the eigen-ODE, so the two vanish together.
        std::normal_distribution<double> gauss;
        Mat4 d0110 = Mat4::Zero();
        d0110(1, 1) = d0110(2, 2) = 1.0;
        Mat4 d1001 = Mat4::Zero();
        d1001(0, 0) = d1001(3, 3) = 1.0;
        for (int t = 0; t < 10; ++t) {
            const BoundaryCondition bc = random_wellposed(rng, params, false);
            const cplx lam(gauss(rng) + 1.8, gauss(rng));
            if (std::abs(lam) < 0.05 || std::abs(lam - 1.0) < 0.05) continue;
            const EigenBasis basis = EigenBasis::make(lam, params);
            Vec4 cv;
            for (int j = 0; j < 4; ++j) cv(j) = cplx(gauss(rng), gauss(rng));
            const Vec4 bminus = basis.wronskian(-params.l) * cv;
            const Vec4 bplus = basis.wronskian(params.l) * cv;
            const Vec4 lhs = bc.minus() * bminus + bc.plus() * bplus;
            const Mat4 g = gamma(bc, params);
            const Vec4 wm = wronskian_W_inv(params, -params.l) * bminus;
            const Vec4 wp = wronskian_W_inv(params, params.l) * bplus;
            const Vec4 expr = g * c.Eps * (wp - wm) + d0110 * wm + d1001 * wp;
            const Vec4 rhs = tilde(bc, params).tilde * expr;
            const double scale = std::max({1.0, max_abs(lhs), max_abs(rhs)});
            if (max_abs(Vec4(lhs - rhs)) > 1e-8 * scale) return false;
        }
        return true;
    }});

    checks.push_back({"boundary-trace-annihilation", [&] {
        auto rule = std::make_shared<QuadratureRule>(
            QuadratureRule::composite_gauss(params.l, 200));
        const GridFunction w = GridFunction::sample(
            rule, [](double x) { return cplx(std::cos(1.3 * x) + 0.2 * x, 0.0); });
        for (int t = 0; t < 5; ++t) {
            const BoundaryCondition bc = random_wellposed(rng, params, t % 2 == 0);
            const Vec8 trace = boundary_trace(bc, params, w);
            const Vec4 mb = bc.minus() * trace.head<4>() + bc.plus() * trace.tail<4>();
            if (max_abs(mb) > 1e-9) return false;
        }
        return true;
    }});

    checks.push_back({"solution-defect-small", [&] {
        auto rule = std::make_shared<QuadratureRule>(
            QuadratureRule::composite_gauss(params.l, 200));
        const double pi = std::acos(-1.0);
        const GridFunction w = GridFunction::sample(
            rule, [&](double x) { return cplx(std::cos(pi * x / params.l), 0.0); });
        const double rq = de_residual(named_bc(NamedBC::Q, params), params, w);
        const double rc = de_residual(named_bc(NamedBC::Clamped, params), params, w);
        return std::max(rq, rc) <= 1e-6;
    }});

    checks.push_back({"degenerate-det-positive-axis", [&] {
        for (double x = 0.25; x <= 5.0; x += 0.25) {
            BeamParams p{x, 1.0, 1.0};  // evaluate at l = x
            if (std::abs(X_matrix(1.0, x, p).determinant()) < 1e-12) return false;
        }
        return true;
    }});

    int failures = 0;
    for (const auto& check : checks) {
        bool ok = false;
        try {
            ok = check.run();
        } catch (const std::exception&) {
            ok = false;
        }
        out << check.name << ": " << (ok ? "PASS" : "FAIL") << "\n";
        if (!ok) ++failures;
    }
    return failures;
}

}  // namespace beamspec
