#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "dhdae/integrate.hpp"
#include "dhdae/models.hpp"

namespace dhdae::io {

using json = nlohmann::json;

// Matrices are row-major nested arrays of [re, im] pairs.
json matrix_to_json(const Mat& m);
Mat matrix_from_json(const json& j, const std::string& name);
json complex_to_json(Complex z);
Complex complex_from_json(const json& j, const std::string& name);

// {"n1", "n2", "E1", "Q1", "Q2", "A"}
json system_to_json(const BlockDhdae& sys);
BlockDhdae system_from_json(const json& j);

// {"format": "pencil", "n1", "E", "A", "Q"}
json pencil_to_json(const Pencil& p);
Pencil pencil_from_json(const json& j);

// {"format": "ph1d", "P1", "G0", "WB", "split": [n1, n2], "coeffs": {"E1": [...], "Q": [...]}}
// Fields are a number, an [re, im] pair, or {"kind": "tabulated", "zeta": [...], "values": [...]}.
Ph1dSystem ph1d_from_json(const json& j);

// A system file holds one of the three formats above.
struct LoadedSystem {
    std::optional<BlockDhdae> system;
    Pencil pencil;
    std::optional<Ph1dSystem> ph1d;
};
LoadedSystem load_system(const json& j, Index N = 32);
json read_json_file(const std::string& path);

json report_to_json(const RegularityReport& r);
json reduced_to_json(const ReducedSystem& r);
json subspace_to_json(const SubspaceReducedSystem& r);
json trajectory_to_json(const Trajectory& traj, const EnergyTrace& en);
json models_to_json();

}  // namespace dhdae::io
