// Command-line front end: well-posedness checks, Green's matrices, the
// boundary-condition representation and its inverses, spectra by
// characteristic equation and by discretization oracle, load solving, and
// eigenvalue realization. All output is deterministic JSON (or CSV where
// flagged); errors go to stderr as JSON with exit code 1 (domain errors)
// or 2 (usage errors).

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "beamspec/existence.hpp"
#include "beamspec/expr.hpp"
#include "beamspec/json_io.hpp"
#include "beamspec/nystrom.hpp"
#include "beamspec/verify.hpp"

namespace {

using namespace beamspec;

struct Common {
    double l = 1.0, alpha = 1.0, k = 1.0;
    BeamParams params() const {
        BeamParams p{l, alpha, k};
        p.validate();
        return p;
    }
};

void add_params(CLI::App* cmd, Common& common) {
    cmd->add_option("--l", common.l, "beam half-length")->capture_default_str();
    cmd->add_option("--alpha", common.alpha, "stiffness ratio (k/EI)^(1/4)")
        ->capture_default_str();
    cmd->add_option("--k", common.k, "foundation spring density")->capture_default_str();
}

std::string point_json(const SpectralPoint& p, double k) {
    std::ostringstream out;
    out << "{\"lambda\":" << jsonio::complex_pair(p.lambda)
        << ",\"k_lambda\":" << jsonio::complex_pair(p.lambda * k)
        << ",\"residual\":" << jsonio::num(p.residual) << ",\"multiplicity\":" << p.multiplicity
        << ",\"c\":[";
    for (int j = 0; j < 4; ++j) {
        if (j) out << ",";
        out << jsonio::complex_pair(p.null_vector(j));
    }
    out << "]}";
    return out.str();
}

Mat4 load_g_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open matrix file: " + path);
    nlohmann::json j;
    in >> j;
    const MatX m = jsonio::parse_matrix(j);
    if (m.rows() != 4 || m.cols() != 4) throw Error("representation matrix must be 4x4");
    return Mat4(m);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-beam boundary-condition representation and spectra"};
    app.require_subcommand(1);

    Common common;
    std::string bc_arg = "q";
    std::string g_path, input_path;
    bool real_branch = false;
    bool csv = false;
    double lo = 1e-4, hi = 0.9999, lambda_arg = 2.0;
    int grid = 2000, count = 4, nodes = 400, top = 6;

    auto* wellposed = app.add_subcommand("wellposed", "test well-posedness of a bc");
    add_params(wellposed, common);
    wellposed->add_option("--bc", bc_arg, "bc name (q|clamped|free|hinged) or JSON file");

    auto* greens = app.add_subcommand("greens", "Green's matrices of a bc");
    add_params(greens, common);
    greens->add_option("--bc", bc_arg, "bc name or JSON file");

    auto* gamma_cmd = app.add_subcommand("gamma", "representation matrix of a bc");
    add_params(gamma_cmd, common);
    gamma_cmd->add_option("--bc", bc_arg, "bc name or JSON file");

    auto* gamma_inv = app.add_subcommand("gamma-inv", "bc realizing a representation matrix");
    add_params(gamma_inv, common);
    gamma_inv->add_option("--g", g_path, "4x4 matrix JSON file")->required();
    gamma_inv->add_flag("--real", real_branch, "produce a real representative");

    auto* spectrum = app.add_subcommand("spectrum", "real eigenvalues of a bc on [lo, hi]");
    add_params(spectrum, common);
    spectrum->add_option("--bc", bc_arg, "bc name or JSON file");
    spectrum->add_option("--lo", lo, "interval start")->capture_default_str();
    spectrum->add_option("--hi", hi, "interval end")->capture_default_str();
    spectrum->add_option("--grid", grid, "minimum sample count")->capture_default_str();
    int spectrum_top = 0;
    spectrum->add_option("--top", spectrum_top, "return at most this many eigenvalues (0 = all)")
        ->capture_default_str();
    spectrum->add_flag("--csv", csv, "emit CSV (n, lambda, k_lambda, residual)");

    auto* specq = app.add_subcommand("specq", "leading base-spectrum pairs");
    add_params(specq, common);
    specq->add_option("--count", count, "number of (mu, nu) pairs")->capture_default_str();
    specq->add_flag("--csv", csv, "emit CSV (n, lambda, k_lambda, residual)");

    auto* solve = app.add_subcommand("solve", "apply the inverse operator to a load");
    solve->add_option("--input", input_path, "JSON: {bc, params, w, nodes}")->required();

    auto* construct = app.add_subcommand("construct", "real bc with a prescribed eigenvalue");
    add_params(construct, common);
    construct->add_option("--lambda", lambda_arg, "target eigenvalue")->required();
    construct->add_option("--nodes", nodes, "oracle nodes for verification")
        ->capture_default_str();

    auto* oracle = app.add_subcommand("oracle", "discretization-oracle spectrum");
    add_params(oracle, common);
    oracle->add_option("--bc", bc_arg, "bc name or JSON file");
    oracle->add_option("--N", nodes, "quadrature nodes")->capture_default_str();
    oracle->add_option("--top", top, "eigenvalues to report")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "run the full invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "{\"error\":\"usage\",\"message\":\"" << e.what() << "\"}\n";
        return 2;
    }

    try {
        const BeamParams params = common.params();

        if (wellposed->parsed()) {
            const BoundaryCondition bc = jsonio::load_bc(bc_arg, params);
            const TildeDecomposition t = tilde(bc, params);
            std::cout << "{\"wellposed\":" << (is_wellposed(bc, params) ? "true" : "false")
                      << ",\"det_tilde\":" << jsonio::complex_pair(t.det_tilde) << "}\n";
        } else if (greens->parsed()) {
            const BoundaryCondition bc = jsonio::load_bc(bc_arg, params);
            const GreensRep rep = gamma_rep(bc, params);
            std::cout << "{\"g_minus\":" << jsonio::matrix(rep.g_minus)
                      << ",\"g_plus\":" << jsonio::matrix(rep.g_plus)
                      << ",\"g_gamma\":" << jsonio::matrix(rep.g_gamma) << "}\n";
        } else if (gamma_cmd->parsed()) {
            const BoundaryCondition bc = jsonio::load_bc(bc_arg, params);
            std::cout << jsonio::matrix(gamma(bc, params)) << "\n";
        } else if (gamma_inv->parsed()) {
            const Mat4 g = load_g_matrix(g_path);
            const BoundaryCondition bc =
                real_branch ? gamma_inverse_real(g, params) : gamma_inverse(g, params);
            std::cout << jsonio::boundary_condition(bc) << "\n";
        } else if (spectrum->parsed()) {
            const BoundaryCondition bc = jsonio::load_bc(bc_arg, params);
            ScanResult result = scan_real_spectrum(bc, params, lo, hi, grid);
            if (spectrum_top > 0 && static_cast<int>(result.points.size()) > spectrum_top)
                result.points.resize(spectrum_top);
            for (double lam : result.unresolved)
                std::cerr << "{\"warning\":\"unresolved bracket\",\"lambda\":" << jsonio::num(lam)
                          << "}\n";
            if (csv) {
                std::cout << "n,lambda,k_lambda,residual\n";
                for (size_t i = 0; i < result.points.size(); ++i)
                    std::cout << i + 1 << "," << jsonio::num(result.points[i].lambda.real()) << ","
                              << jsonio::num(result.points[i].lambda.real() * params.k) << ","
                              << jsonio::num(result.points[i].residual) << "\n";
            } else {
                std::cout << "[";
                for (size_t i = 0; i < result.points.size(); ++i) {
                    if (i) std::cout << ",";
                    std::cout << point_json(result.points[i], params.k);
                }
                std::cout << "]\n";
            }
        } else if (specq->parsed()) {
            const auto pairs = spec_Q(params, count);
            if (csv) {
                std::cout << "n,lambda,k_lambda,residual\n";
                for (size_t i = 0; i < pairs.size(); ++i) {
                    std::cout << i + 1 << "," << jsonio::num(pairs[i].mu) << ","
                              << jsonio::num(pairs[i].mu * params.k) << ","
                              << jsonio::num(pairs[i].mu_residual) << "\n";
                    std::cout << i + 1 << "," << jsonio::num(pairs[i].nu) << ","
                              << jsonio::num(pairs[i].nu * params.k) << ","
                              << jsonio::num(pairs[i].nu_residual) << "\n";
                }
            } else {
                std::ostringstream mu, nu;
                for (size_t i = 0; i < pairs.size(); ++i) {
                    if (i) {
                        mu << ",";
                        nu << ",";
                    }
                    mu << jsonio::num(pairs[i].mu);
                    nu << jsonio::num(pairs[i].nu);
                }
                std::cout << "{\"mu\":[" << mu.str() << "],\"nu\":[" << nu.str()
                          << "],\"k_mu\":[";
                for (size_t i = 0; i < pairs.size(); ++i)
                    std::cout << (i ? "," : "") << jsonio::num(pairs[i].mu * params.k);
                std::cout << "],\"k_nu\":[";
                for (size_t i = 0; i < pairs.size(); ++i)
                    std::cout << (i ? "," : "") << jsonio::num(pairs[i].nu * params.k);
                std::cout << "]}\n";
            }
        } else if (solve->parsed()) {
            std::ifstream in(input_path);
            if (!in) throw Error("cannot open input file: " + input_path);
            nlohmann::json j;
            in >> j;
            const BeamParams p = j.contains("params") ? jsonio::parse_params(j.at("params"))
                                                      : params;
            const BoundaryCondition bc = jsonio::parse_bc(j.at("bc"), p);
            const int n = j.value("nodes", 200);
            auto rule =
                std::make_shared<QuadratureRule>(QuadratureRule::composite_gauss(p.l, n));
            GridFunction w;
            const auto& wj = j.at("w");
            const std::string kind = wj.at("kind").get<std::string>();
            if (kind == "samples") {
                w.rule = rule;
                for (const auto& e : wj.at("values"))
                    w.values.push_back(cplx(e[0].get<double>(), e[1].get<double>()));
                if (w.values.size() != rule->nodes.size())
                    throw Error("solve: sample count must equal node count " +
                                std::to_string(rule->nodes.size()));
            } else if (kind == "expr-grid") {
                const std::string text = wj.at("expr").get<std::string>();
                w = GridFunction::sample(
                    rule, [&](double x) { return cplx(expr::eval(text, x), 0.0); });
            } else {
                throw Error("solve: w.kind must be \"samples\" or \"expr-grid\"");
            }
            std::cout << jsonio::grid_function(apply_K(bc, p, w)) << "\n";
        } else if (construct->parsed()) {
            const ConstructionResult result = construct_bc_for_eigenvalue(lambda_arg, params);
            const cplx cdy = char_det_Y(result.bc, params, lambda_arg);
            const auto oracle_evs = nystrom_spectrum(result.bc, params, nodes, 32);
            double best = std::numeric_limits<double>::infinity();
            cplx best_ev = 0.0;
            for (const cplx& ev : oracle_evs)
                if (std::abs(ev - lambda_arg) < best) {
                    best = std::abs(ev - lambda_arg);
                    best_ev = ev;
                }
            std::cout << "{\"bc\":" << jsonio::boundary_condition(result.bc)
                      << ",\"point\":" << point_json(result.point, params.k)
                      << ",\"verification\":{\"char_det_Y\":" << jsonio::complex_pair(cdy)
                      << ",\"nystrom_match\":{\"lambda\":" << jsonio::complex_pair(best_ev)
                      << ",\"rel_delta\":" << jsonio::num(best / std::abs(lambda_arg))
                      << ",\"nodes\":" << nodes << "}}}\n";
        } else if (oracle->parsed()) {
            const BoundaryCondition bc = jsonio::load_bc(bc_arg, params);
            const auto report = nystrom_report(bc, params, nodes, top);
            std::cout << "[";
            for (size_t i = 0; i < report.size(); ++i) {
                if (i) std::cout << ",";
                std::cout << "{\"lambda\":" << jsonio::complex_pair(report[i].lambda)
                          << ",\"k_lambda\":" << jsonio::complex_pair(report[i].lambda * params.k)
                          << ",\"residual\":" << jsonio::num(report[i].residual)
                          << ",\"convergence_delta\":" << jsonio::num(report[i].convergence_delta)
                          << "}";
            }
            std::cout << "]\n";
        } else if (verify->parsed()) {
            const int failures = run_verification(std::cout);
            return failures == 0 ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cerr << "{\"error\":\"domain\",\"message\":\"" << e.what() << "\"}\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\":\"internal\",\"message\":\"" << e.what() << "\"}\n";
        return 1;
    }
    return 0;
}
