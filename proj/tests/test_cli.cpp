#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "beamspec/json_io.hpp"

using nlohmann::json;

namespace {

const std::string kCli = BEAMSPEC_CLI_PATH;
const std::string kDir = BEAMSPEC_WORK_DIR;

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args, const std::string& tag) {
    const std::string out_path = kDir + "/cli_" + tag + ".out";
    const std::string cmd = kCli + " " + args + " > " + out_path + " 2> " + out_path + ".err";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::stringstream buf;
    buf << in.rdbuf();
    return {WEXITSTATUS(status), buf.str()};
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

}  // namespace

TEST_CASE("base-spectrum command") {
    const RunResult r = run("specq --count 4", "specq");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j.at("mu").size() == 4);
    REQUIRE(j.at("nu").size() == 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(j["mu"][i].get<double>() > 0.0);
        CHECK(j["mu"][i].get<double>() < 1.0);
        CHECK(j["nu"][i].get<double>() < j["mu"][i].get<double>());
    }
    // deterministic byte-for-byte output
    const RunResult again = run("specq --count 4", "specq2");
    CHECK(again.out == r.out);
}

TEST_CASE("well-posedness command") {
    const RunResult r = run("wellposed --bc clamped", "wellposed");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("wellposed").get<bool>());
    CHECK(j.at("det_tilde").is_array());
}

TEST_CASE("representation command on the reference condition") {
    const RunResult r = run("gamma --bc q", "gammaq");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("rows").get<int>() == 4);
    for (const auto& e : j.at("data")) {
        CHECK(std::abs(e[0].get<double>()) < 1e-12);
        CHECK(std::abs(e[1].get<double>()) < 1e-12);
    }
}

TEST_CASE("representation round-trip through files") {
    const std::string g1 = kDir + "/roundtrip_g1.json";
    const std::string bc = kDir + "/roundtrip_bc.json";

    RunResult r = run("gamma --bc clamped", "rt1");
    REQUIRE(r.exit_code == 0);
    write_file(g1, r.out);

    r = run("gamma-inv --real --g " + g1, "rt2");
    REQUIRE(r.exit_code == 0);
    write_file(bc, r.out);

    const RunResult r2 = run("gamma --bc " + bc, "rt3");
    REQUIRE(r2.exit_code == 0);

    const beamspec::MatX m1 = beamspec::jsonio::parse_matrix(json::parse(run("gamma --bc clamped", "rt4").out));
    const beamspec::MatX m2 = beamspec::jsonio::parse_matrix(json::parse(r2.out));
    CHECK((m1 - m2).cwiseAbs().maxCoeff() <= 1e-8);

    // the produced representative is exactly real
    const json bcj = json::parse(run("gamma-inv --real --g " + g1, "rt5").out);
    for (const auto& e : bcj.at("M").at("data")) CHECK(e[1].get<double>() == 0.0);
}

TEST_CASE("solver command with an expression load") {
    const std::string input = kDir + "/solve_input.json";
    write_file(input, R"json({"bc": {"name": "q"}, "params": {"l": 1, "alpha": 1, "k": 1},
 "w": {"kind": "expr-grid", "expr": "cos(pi*x)"}, "nodes": 120})json");
    const RunResult r = run("solve --input " + input, "solve");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("nodes").size() == 120);
    CHECK(j.at("values").size() == 120);
    // the deflection under a symmetric load is symmetric: compare mirrored nodes
    const auto& vals = j.at("values");
    const int n = 120;
    for (int i = 0; i < 10; ++i) {
        const double a = vals[i][0].get<double>();
        const double b = vals[n - 1 - i][0].get<double>();
        CHECK(a == doctest::Approx(b).epsilon(1e-9));
    }
}

TEST_CASE("construct command verifies its own output") {
    const RunResult r = run("construct --lambda 2 --nodes 240", "construct");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j.at("bc").at("is_real").get<bool>());
    CHECK(j.at("verification").at("nystrom_match").at("rel_delta").get<double>() <= 1e-4);
}

TEST_CASE("oracle command") {
    const RunResult r = run("oracle --bc q --N 200 --top 3", "oracle");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j.size() == 3);
    CHECK(j[0].at("lambda")[0].get<double>() == doctest::Approx(0.578350951).epsilon(1e-6));
    for (const auto& e : j) CHECK(e.at("convergence_delta").get<double>() < 1e-4);
}

TEST_CASE("spectrum command emits CSV when asked") {
    const RunResult r = run("spectrum --bc clamped --lo 1e-4 --hi 0.9999 --csv", "speccsv");
    REQUIRE(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "n,lambda,k_lambda,residual");
    std::string first;
    std::getline(lines, first);
    CHECK(first.substr(0, 2) == "1,");
}

TEST_CASE("matrix JSON round-trips through the emitter and parser") {
    std::mt19937_64 rng(149);
    std::normal_distribution<double> gauss;
    for (int t = 0; t < 20; ++t) {
        beamspec::MatX m(3 + t % 3, 2 + t % 5);
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j)
                m(i, j) = beamspec::cplx(gauss(rng) * std::pow(10.0, t % 7 - 3), gauss(rng));
        const beamspec::MatX back =
            beamspec::jsonio::parse_matrix(json::parse(beamspec::jsonio::matrix(m)));
        REQUIRE(back.rows() == m.rows());
        // 17 significant digits reproduce doubles exactly
        CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);
    }
    CHECK_THROWS_AS(
        beamspec::jsonio::parse_matrix(json::parse(R"({"rows":2,"cols":2,"data":[[1,0]]})")),
        beamspec::Error);
}

TEST_CASE("invariant suite subcommand") {
    const RunResult r = run("verify", "verify");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find(": PASS") != std::string::npos);
}

TEST_CASE("error reporting") {
    CHECK(run("wellposed --bc /nonexistent/file.json", "err1").exit_code == 1);
    CHECK(run("bogus-subcommand", "err2").exit_code == 2);
    CHECK(run("construct --lambda 0", "err3").exit_code == 1);
}
