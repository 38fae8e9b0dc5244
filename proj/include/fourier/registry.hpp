#pragma once

#include "fourier/models.hpp"
#include "fourier/payoffs.hpp"
#include "fourier/quadrature.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <vector>

namespace fourier {

// One benchmark configuration: market and model parameters, the published
// reference price with its Monte Carlo error, the tabulated damping vector,
// an independently frozen optimizer output for regression, and tensor-grid
// settings known to price the example at desk scale.
struct RegistryEntry {
    int id;
    std::string name;
    ModelSpec model;
    PayoffSpec payoff;
    double reference;
    double stat_error;
    Vec damping_table;
    Vec damping_ref;
    RuleKind quad_rule;
    bool quad_scaled;
    int quad_level;

    nlohmann::json to_json() const;
    static RegistryEntry from_json(const nlohmann::json& j);
};

// The 36 benchmark examples, ordered by id (1-based).
const std::vector<RegistryEntry>& example_registry();

const RegistryEntry& example(int id);

} // namespace fourier
