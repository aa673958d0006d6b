#include "baiwrc/sweep.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "baiwrc/experiments.hpp"
#include "baiwrc/harness.hpp"

namespace baiwrc {

namespace {

struct Cell {
    double x = 0.0;
    std::string label;
    Instance instance;
};

std::vector<Cell> figure1_cells(const Json& grid) {
    std::vector<Cell> cells;
    auto add_point = [&cells](double x, double d) {
        auto [q_det, q_sto] = gen_figure1_pair(d);
        cells.push_back(Cell{x, "det", std::move(q_det)});
        cells.push_back(Cell{x, "sto", std::move(q_sto)});
    };
    if (grid.contains("d"))
        for (const Json& v : grid.at("d")) add_point(v.get<double>(), v.get<double>());
    if (grid.contains("inv_d"))
        for (const Json& v : grid.at("inv_d")) add_point(v.get<double>(), 1.0 / v.get<double>());
    return cells;
}

std::vector<Cell> synthetic_cells(const Json& grid) {
    SetupSpec base;
    base.K = grid.value("K", 64);
    base.L = grid.value("L", 1);
    if (grid.contains("budgets"))
        base.budgets = grid.at("budgets").get<std::vector<double>>();
    else
        base.budgets.assign(base.L, 1500.0);

    std::vector<RewardShape> shapes;
    std::vector<ConsumptionPattern> patterns;
    std::vector<ConsumptionKind> kinds;
    if (grid.contains("shapes"))
        for (const Json& v : grid.at("shapes")) shapes.push_back(parse_reward_shape(v.get<std::string>()));
    else
        shapes = {RewardShape::OneGroup, RewardShape::Trap, RewardShape::Polynomial, RewardShape::Geometric};
    if (grid.contains("patterns"))
        for (const Json& v : grid.at("patterns")) patterns.push_back(parse_consumption_pattern(v.get<std::string>()));
    else
        patterns = {ConsumptionPattern::HmH, ConsumptionPattern::HmL};
    if (grid.contains("kinds"))
        for (const Json& v : grid.at("kinds")) kinds.push_back(parse_consumption_kind(v.get<std::string>()));
    else
        kinds = {ConsumptionKind::Uncorrelated, ConsumptionKind::Correlated};

    std::vector<Cell> cells;
    double x = 1.0;
    for (RewardShape shape : shapes)
        for (ConsumptionPattern pattern : patterns)
            for (ConsumptionKind kind : kinds) {
                SetupSpec spec = base;
                spec.shape = shape;
                spec.pattern = pattern;
                spec.kind = kind;
                const std::string label =
                    to_string(shape) + "_" + to_string(pattern) + "_" + to_string(kind);
                cells.push_back(Cell{x, label, gen_synthetic(spec)});
                x += 1.0;
            }
    return cells;
}

void append_number(std::string& row, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    row += buf;
}

}  // namespace

SweepConfig sweep_config_from_json(const Json& j) {
    SweepConfig cfg;
    if (!j.is_object()) throw ValidationError("sweep config: expected a JSON object");
    if (!j.contains("generator") || !j.at("generator").is_string())
        throw ValidationError("sweep config: missing 'generator'");
    cfg.generator = j.at("generator").get<std::string>();
    cfg.grid = j.value("grid", Json::object());
    if (!j.contains("policies") || !j.at("policies").is_array())
        throw ValidationError("sweep config: missing 'policies'");
    for (const Json& v : j.at("policies")) cfg.policies.push_back(parse_policy_kind(v.get<std::string>()));
    if (!j.contains("trials")) throw ValidationError("sweep config: missing 'trials'");
    cfg.trials = j.at("trials").get<std::uint64_t>();
    cfg.seed = j.value("seed", std::uint64_t{0});
    cfg.out = j.value("out", std::string{});
    if (cfg.trials == 0) throw ValidationError("sweep config: trials must be >= 1");
    return cfg;
}

SweepConfig parse_sweep_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError(path + ": cannot open file");
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw ValidationError(path + ": invalid JSON (" + e.what() + ")");
    }
    return sweep_config_from_json(j);
}

void run_sweep(const SweepConfig& cfg, int threads, std::ostream& csv) {
    std::vector<Cell> cells;
    if (cfg.generator == "figure1") cells = figure1_cells(cfg.grid);
    else if (cfg.generator == "synthetic") cells = synthetic_cells(cfg.grid);
    else throw ValidationError("sweep config: unknown generator '" + cfg.generator + "'");

    csv << "x,policy,instance_label,p_hat,ci_lo,ci_hi,trials\n";
    std::uint64_t cell_index = 0;
    for (const Cell& cell : cells) {
        for (PolicyKind policy : cfg.policies) {
            const FailureStats stats =
                estimate_failure(cell.instance, policy, cfg.trials, mix_seed(cfg.seed, cell_index), threads);
            std::string row;
            append_number(row, cell.x);
            row += "," + to_string(policy) + "," + cell.label + ",";
            append_number(row, stats.p_hat);
            row += ",";
            append_number(row, stats.ci_lo);
            row += ",";
            append_number(row, stats.ci_hi);
            row += "," + std::to_string(stats.trials);
            csv << row << "\n";
            ++cell_index;
        }
    }
}

}  // namespace baiwrc
