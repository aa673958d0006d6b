#pragma once

#include <string>

#include <json.hpp>

#include "baiwrc/complexity.hpp"
#include "baiwrc/harness.hpp"
#include "baiwrc/instance.hpp"

namespace baiwrc {

using Json = nlohmann::json;

struct ParseOptions {
    bool tight_bernoulli_b = false;
};

// Instance JSON schema:
//   {"arms": [{"reward": {"kind": "...", ...},
//              "consumption": [{...}, ...],
//              "coupling": "independent"|"shared_uniform"}],
//    "budgets": [...],
//    "envelope_override": [{"b": ..., "sigma2": ...}, ...]}   (optional)
// Distribution parameters by kind: deterministic {value}, bernoulli {mean},
// uniform {lo, hi}, gaussian {mean, variance}.
Instance instance_from_json(const Json& j, const ParseOptions& options = {});
Instance parse_instance(const std::string& path, const ParseOptions& options = {});
Json instance_to_json(const Instance& instance);
void write_instance(const std::string& path, const Instance& instance);

Json complexity_report_to_json(const ComplexityReport& report);
Json failure_stats_to_json(const FailureStats& stats, PolicyKind kind);

}  // namespace baiwrc
