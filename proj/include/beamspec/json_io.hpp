#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "beamspec/greens.hpp"

namespace beamspec::jsonio {

/// All emitters below produce byte-stable output: fixed field order and
/// 17-significant-digit floats, so identical inputs give identical files.

std::string num(double v);
std::string complex_pair(cplx v);

std::string matrix(const MatX& m);
std::string params(const BeamParams& p);
std::string boundary_condition(const BoundaryCondition& bc, const std::string& name = "");
std::string grid_function(const GridFunction& g);

MatX parse_matrix(const nlohmann::json& j);
BeamParams parse_params(const nlohmann::json& j);

/// Accepts {"M": <matrix>} or {"name": "q"|"clamped"|"free"|"hinged"};
/// named conditions are materialized with the given params.
BoundaryCondition parse_bc(const nlohmann::json& j, const BeamParams& p);

/// Resolves a CLI --bc argument: a known name or a path to a JSON file.
BoundaryCondition load_bc(const std::string& name_or_path, const BeamParams& p);

}  // namespace beamspec::jsonio
