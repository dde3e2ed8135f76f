#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dhdae/ph1d.hpp"
#include "dhdae/saddle.hpp"

namespace dhdae {

using ModelParams = std::map<std::string, double>;

struct ModelInfo {
    std::string name;
    std::string description;
    ModelParams defaults;
    bool deliberately_singular = false;
    bool schur_reducible = true;
    bool conservative = false;  // energy is conserved rather than merely non-increasing
};

struct Model {
    ModelInfo info;
    ModelParams params;             // defaults merged with overrides
    Pencil pencil;                  // always available
    std::optional<BlockDhdae> system;
    std::optional<Ph1dSystem> ph1d;
    std::optional<Discretization> grid;
    std::optional<StokesMac> stokes;
    Vec initial_x1;                 // smooth default initial data (empty for the singular fixture)
};

const std::vector<ModelInfo>& model_registry();
const ModelInfo& model_info(const std::string& name);

// Throws usage errors for unknown names, unknown parameters and invalid grid sizes.
Model build_model(const std::string& name, const ModelParams& overrides = {});

// "k=v" strings to a parameter map.
ModelParams parse_params(const std::vector<std::string>& items);

}  // namespace dhdae
