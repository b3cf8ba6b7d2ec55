#include "beamspec/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace beamspec::jsonio {

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string complex_pair(cplx v) { return "[" + num(v.real()) + "," + num(v.imag()) + "]"; }

std::string matrix(const MatX& m) {
    std::ostringstream out;
    out << "{\"rows\":" << m.rows() << ",\"cols\":" << m.cols() << ",\"data\":[";
    bool first = true;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (!first) out << ",";
            first = false;
            out << complex_pair(m(i, j));
        }
    out << "]}";
    return out.str();
}

std::string params(const BeamParams& p) {
    return "{\"l\":" + num(p.l) + ",\"alpha\":" + num(p.alpha) + ",\"k\":" + num(p.k) + "}";
}

std::string boundary_condition(const BoundaryCondition& bc, const std::string& name) {
    std::string out = "{\"M\":" + matrix(bc.M.cast<cplx>());
    if (!name.empty()) out += ",\"name\":\"" + name + "\"";
    out += ",\"is_real\":";
    out += bc.is_real ? "true" : "false";
    out += "}";
    return out;
}

std::string grid_function(const GridFunction& g) {
    std::ostringstream out;
    out << "{\"nodes\":[";
    for (size_t i = 0; i < g.rule->nodes.size(); ++i) {
        if (i) out << ",";
        out << num(g.rule->nodes[i]);
    }
    out << "],\"values\":[";
    for (size_t i = 0; i < g.values.size(); ++i) {
        if (i) out << ",";
        out << complex_pair(g.values[i]);
    }
    out << "]}";
    return out.str();
}

MatX parse_matrix(const nlohmann::json& j) {
    const int rows = j.at("rows").get<int>();
    const int cols = j.at("cols").get<int>();
    const auto& data = j.at("data");
    if (rows <= 0 || cols <= 0 || static_cast<int>(data.size()) != rows * cols)
        throw Error("matrix JSON: data length does not match rows*cols");
    MatX m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int c = 0; c < cols; ++c) {
            const auto& e = data[i * cols + c];
            if (!e.is_array() || e.size() != 2)
                throw Error("matrix JSON: entries must be [re, im] pairs");
            m(i, c) = cplx(e[0].get<double>(), e[1].get<double>());
        }
    if (!all_finite(m)) throw Error("matrix JSON: entries must be finite");
    return m;
}

BeamParams parse_params(const nlohmann::json& j) {
    BeamParams p;
    p.l = j.at("l").get<double>();
    p.alpha = j.at("alpha").get<double>();
    p.k = j.at("k").get<double>();
    p.validate();
    return p;
}

namespace {

bool named_from_string(const std::string& s, NamedBC& out) {
    if (s == "q" || s == "Q") out = NamedBC::Q;
    else if (s == "clamped") out = NamedBC::Clamped;
    else if (s == "free") out = NamedBC::Free;
    else if (s == "hinged") out = NamedBC::Hinged;
    else return false;
    return true;
}

}  // namespace

BoundaryCondition parse_bc(const nlohmann::json& j, const BeamParams& p) {
    if (j.contains("M")) {
        const MatX m = parse_matrix(j.at("M"));
        if (m.rows() != 4 || m.cols() != 8)
            throw Error("boundary condition matrix must be 4x8");
        Mat48 fixed = m;
        return BoundaryCondition::from_matrix(fixed);
    }
    if (j.contains("name")) {
        NamedBC which;
        if (!named_from_string(j.at("name").get<std::string>(), which))
            throw Error("unknown boundary condition name");
        return named_bc(which, p);
    }
    throw Error("boundary condition JSON needs \"M\" or \"name\"");
}

BoundaryCondition load_bc(const std::string& name_or_path, const BeamParams& p) {
    NamedBC which;
    if (named_from_string(name_or_path, which)) return named_bc(which, p);
    std::ifstream in(name_or_path);
    if (!in) throw Error("cannot open boundary condition file: " + name_or_path);
    nlohmann::json j;
    in >> j;
    return parse_bc(j, p);
}

}  // namespace beamspec::jsonio
