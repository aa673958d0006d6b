#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "baiwrc/json_io.hpp"
#include "baiwrc/policies.hpp"

namespace baiwrc {

// Sweep configuration (JSON):
//   {"generator": "figure1"|"synthetic",
//    "grid": {...},
//    "policies": ["shrr", ...],
//    "trials": N, "seed": S, "out": "path.csv"}
// figure1 grids: {"d": [...]} and/or {"inv_d": [...]} — each point yields a
// deterministic- and a Bernoulli-consumption instance (labels det/sto).
// synthetic grids: {"K": k, "L": l, "budgets": [...], "shapes": [...],
// "patterns": [...], "kinds": [...]} — full cross product.
struct SweepConfig {
    std::string generator;
    Json grid;
    std::vector<PolicyKind> policies;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::string out;
};

SweepConfig sweep_config_from_json(const Json& j);
SweepConfig parse_sweep_config(const std::string& path);

// Runs every (grid point, policy) cell and writes CSV rows
// x,policy,instance_label,p_hat,ci_lo,ci_hi,trials. Cell seeds derive from
// the config seed and the cell's position, so output is byte-identical for
// any thread count.
void run_sweep(const SweepConfig& config, int threads, std::ostream& csv);

}  // namespace baiwrc
