// baiwrc — command-line front end.
//
// Subcommands:
//   run         Monte Carlo failure estimation for one policy on one instance
//               (from a JSON file, or from external command-backed arms).
//   sweep       grid of (instance, policy) cells from a JSON config -> CSV.
//   complexity  complexity measures and bound values for an instance.
//   validate    check an instance file; exit 0 if valid, 1 otherwise.
//   gen         write generated instance families to JSON files.
//
// Exit codes: 0 success, 1 validation/domain failure, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "baiwrc/complexity.hpp"
#include "baiwrc/experiments.hpp"
#include "baiwrc/external_arm.hpp"
#include "baiwrc/harness.hpp"
#include "baiwrc/instance.hpp"
#include "baiwrc/json_io.hpp"
#include "baiwrc/policies.hpp"
#include "baiwrc/sweep.hpp"

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

baiwrc::PolicyParams parse_policy_params(const std::vector<std::string>& kvs) {
    baiwrc::PolicyParams params;
    for (const std::string& kv : kvs) {
        const std::size_t eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw UsageError("--policy-param expects key=value, got \"" + kv + "\"");
        const std::string key = kv.substr(0, eq);
        const std::string raw = kv.substr(eq + 1);
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(raw, &used);
        } catch (const std::exception&) {
            throw UsageError("--policy-param " + key + ": \"" + raw + "\" is not a number");
        }
        if (used != raw.size())
            throw UsageError("--policy-param " + key + ": \"" + raw + "\" is not a number");
        params[key] = value;
    }
    return params;
}

std::vector<std::string> split_command(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> parts;
    std::string part;
    while (in >> part) parts.push_back(part);
    return parts;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    return out;
}

void emit_json(const baiwrc::Json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        auto out = open_out(out_path);
        out << j.dump(2) << "\n";
    }
}

void write_family(const std::vector<baiwrc::Instance>& family, const std::string& prefix) {
    for (std::size_t i = 0; i < family.size(); ++i) {
        const std::string path = prefix + "_" + std::to_string(i + 1) + ".json";
        baiwrc::write_instance(path, family[i]);
        std::cout << path << "\n";
    }
}

// ---- run ----------------------------------------------------------------

struct RunArgs {
    std::string instance_path;
    std::vector<std::string> external_arms;
    std::vector<double> budgets;  // external mode only
    std::string policy = "shrr";
    std::vector<std::string> policy_params;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    int threads = 1;
    double timeout_s = 60.0;
    double budget_scale = 1.0;
    int best_arm = 0;  // 1-based; 0 = unknown
    std::string emit_trials;
    std::string out;
};

int cmd_run(const RunArgs& args) {
    using namespace baiwrc;
    if (args.trials == 0) throw UsageError("--trials must be at least 1");
    if (args.threads < 1) throw UsageError("--threads must be at least 1");
    if (args.instance_path.empty() == args.external_arms.empty())
        throw UsageError("exactly one of --instance and --external-arm is required");

    const PolicyKind kind = parse_policy_kind(args.policy);
    const PolicyParams params = parse_policy_params(args.policy_params);

    FailureStats stats;
    std::vector<TrialResult> per_trial;
    int num_resources = 0;
    bool failures_known = true;

    if (!args.instance_path.empty()) {
        const Instance instance = parse_instance(args.instance_path);
        num_resources = instance.num_resources();
        stats = estimate_failure(instance, kind, args.trials, args.seed, args.threads, params,
                                 args.emit_trials.empty() ? nullptr : &per_trial);
    } else {
        if (args.budgets.empty())
            throw UsageError("--budget is required with --external-arm");
        if (args.budgets.size() != 1)
            throw UsageError("external arms support a single resource; give --budget once");
        std::vector<ExternalArmSpec> arms;
        for (const std::string& text : args.external_arms) {
            ExternalArmSpec spec;
            spec.command = split_command(text);
            if (spec.command.empty()) throw UsageError("--external-arm: empty command");
            spec.timeout_s = args.timeout_s;
            spec.budget_scale = args.budget_scale;
            arms.push_back(std::move(spec));
        }
        const int num_arms = static_cast<int>(arms.size());
        if (args.best_arm < 0 || args.best_arm > num_arms)
            throw UsageError("--best-arm must be in 1..#arms");
        failures_known = args.best_arm != 0;
        num_resources = 1;

        // Subprocess pulls are timing measurements: keep them sequential.
        const Sampler sampler = [&arms](int arm, Rng& rng) {
            return pull_external(arms[static_cast<std::size_t>(arm)], rng).outcome;
        };
        stats.trials = args.trials;
        stats.base_seed = args.seed;
        for (std::uint64_t i = 0; i < args.trials; ++i) {
            TrialResult trial = run_trial_with(num_arms, args.budgets, sampler, kind,
                                               mix_seed(args.seed, i), params);
            if (failures_known && trial.psi != args.best_arm - 1) ++stats.failures;
            if (!args.emit_trials.empty()) per_trial.push_back(std::move(trial));
        }
        stats.p_hat = static_cast<double>(stats.failures) / static_cast<double>(stats.trials);
        const auto ci = wilson_interval(stats.failures, stats.trials);
        stats.ci_lo = ci.first;
        stats.ci_hi = ci.second;
    }

    if (!args.emit_trials.empty()) {
        auto out = open_out(args.emit_trials);
        write_trials_csv(out, per_trial, num_resources);
    }

    Json j = failure_stats_to_json(stats, kind);
    if (!failures_known) {
        j["failures"] = nullptr;
        j["p_hat"] = nullptr;
        j["ci_lo"] = nullptr;
        j["ci_hi"] = nullptr;
    }
    if (args.out.empty()) {
        std::cout << j.dump() << "\n";
    } else {
        auto out = open_out(args.out);
        out << j.dump() << "\n";
    }
    return 0;
}

// ---- gen ----------------------------------------------------------------

struct GenArgs {
    std::string family;
    std::string out;
    // synthetic
    std::string shape = "onegroup";
    std::string pattern = "hmh";
    std::string kind = "uncorrelated";
    int K = 2;
    int L = 1;
    std::vector<double> budgets;
    // figure1
    double d = 0.5;
    // theorem2 / theorem3
    std::vector<double> r;
    std::vector<double> cons_means;  // descending means; theorem3 base means
    std::string cons = "deterministic";
    double c = 0.5;
};

std::vector<double> default_descending(int k, double hi, double lo) {
    std::vector<double> v(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        v[static_cast<std::size_t>(i)] = k == 1 ? hi : hi - (hi - lo) * i / (k - 1);
    return v;
}

int cmd_gen(const GenArgs& args) {
    using namespace baiwrc;
    if (args.out.empty()) throw UsageError("--out is required");

    if (args.family == "synthetic") {
        SetupSpec spec;
        spec.shape = parse_reward_shape(args.shape);
        spec.pattern = parse_consumption_pattern(args.pattern);
        spec.kind = parse_consumption_kind(args.kind);
        spec.K = args.K;
        spec.L = args.L;
        spec.budgets = args.budgets.empty() ? std::vector<double>(static_cast<std::size_t>(args.L), 1500.0)
                                            : args.budgets;
        write_instance(args.out, gen_synthetic(spec));
        std::cout << args.out << "\n";
        return 0;
    }
    if (args.family == "figure1") {
        const auto [det, sto] = gen_figure1_pair(args.d);
        write_instance(args.out + "_det.json", det);
        write_instance(args.out + "_sto.json", sto);
        std::cout << args.out + "_det.json" << "\n" << args.out + "_sto.json" << "\n";
        return 0;
    }
    if (args.family == "theorem2") {
        const bool uniform = args.cons == "uniform";
        if (!uniform && args.cons != "deterministic")
            throw UsageError("--cons must be deterministic or uniform");
        const std::vector<double> r =
            args.r.empty() ? default_descending(args.K, 0.5, 0.3) : args.r;
        const std::vector<double> means = args.cons_means.empty()
                                              ? default_descending(args.K, uniform ? 0.45 : 0.9,
                                                                   uniform ? 0.2 : 0.4)
                                              : args.cons_means;
        const std::vector<double> budgets = args.budgets.empty() ? std::vector<double>{100.0} : args.budgets;
        std::vector<std::vector<DistributionSpec>> cons(budgets.size());
        for (auto& resource : cons) {
            for (const double mean : means)
                resource.push_back(uniform ? DistributionSpec::uniform(0.0, 2.0 * mean)
                                           : DistributionSpec::deterministic(mean));
        }
        write_family(gen_theorem2_family(r, cons, budgets), args.out);
        return 0;
    }
    if (args.family == "theorem3") {
        const std::vector<double> r =
            args.r.empty() ? default_descending(args.K, 0.5, 0.25) : args.r;
        const std::vector<double> d0 =
            args.cons_means.empty() ? default_descending(args.K, 0.9, 0.4) : args.cons_means;
        const std::vector<double> budgets = args.budgets.empty() ? std::vector<double>{100.0} : args.budgets;
        write_family(gen_theorem3_family(r, d0, args.c, budgets), args.out);
        // Report the scale-threshold inequalities per flip index (informative;
        // the generator never solves for the threshold).
        const auto g = [](double d) { return effective_consumption(1.0, d * (1.0 - d), d); };
        Json conditions = Json::array();
        for (int i = 2; i <= static_cast<int>(r.size()); ++i) {
            const Theorem3Condition cond = theorem3_condition(r, d0, args.c, budgets, g, i);
            conditions.push_back({{"i", i},
                                  {"g_small", cond.g_small},
                                  {"flip_mass", cond.flip_mass},
                                  {"info_budget", cond.info_budget},
                                  {"budget_floor", cond.budget_floor},
                                  {"log_scale", cond.log_scale},
                                  {"all", cond.all()}});
        }
        std::cout << Json{{"conditions", conditions}}.dump() << "\n";
        return 0;
    }
    if (args.family == "b5") {
        const std::vector<double> budgets = args.budgets.empty() ? std::vector<double>{100.0} : args.budgets;
        if (budgets.size() != 1) throw UsageError("the b5 family has one resource; give --budget once");
        write_family(gen_appendix_b5_family(args.K, budgets[0]), args.out);
        return 0;
    }
    throw UsageError("unknown --family " + args.family +
                     " (expected synthetic|figure1|theorem2|theorem3|b5)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Best-arm identification under resource budgets: policies, complexity "
                 "measures, and a Monte Carlo failure-probability harness"};
    app.require_subcommand(1);

    RunArgs run_args;
    CLI::App* run = app.add_subcommand("run", "Estimate failure probability for one policy");
    run->add_option("--instance", run_args.instance_path, "Instance JSON file");
    run->add_option("--external-arm", run_args.external_arms,
                    "Command backing one arm (repeat per arm; whitespace-split, no shell)");
    run->add_option("--budget", run_args.budgets, "Resource budget (external mode)");
    run->add_option("--policy", run_args.policy, "shrr|uniform|ucb|atlucb|dsh")->capture_default_str();
    run->add_option("--policy-param", run_args.policy_params, "Policy hyperparameter key=value");
    run->add_option("--trials", run_args.trials, "Number of Monte Carlo trials")->required();
    run->add_option("--seed", run_args.seed, "Base seed")->capture_default_str();
    run->add_option("--threads", run_args.threads, "Worker threads")->capture_default_str();
    run->add_option("--timeout", run_args.timeout_s, "External command timeout, seconds")
        ->capture_default_str();
    run->add_option("--budget-scale", run_args.budget_scale,
                    "External mode: seconds of wall time per consumption unit")
        ->capture_default_str();
    run->add_option("--best-arm", run_args.best_arm,
                    "External mode: 1-based true best arm for failure accounting");
    run->add_option("--emit-trials", run_args.emit_trials, "Write per-trial CSV here");
    run->add_option("--out", run_args.out, "Write the summary JSON here instead of stdout");

    std::string sweep_config;
    std::string sweep_out;
    int sweep_threads = 1;
    CLI::App* sweep = app.add_subcommand("sweep", "Run a (grid x policy) sweep from a JSON config");
    sweep->add_option("--config", sweep_config, "Sweep config JSON file")->required();
    sweep->add_option("--out", sweep_out, "CSV output path (overrides the config's \"out\")");
    sweep->add_option("--threads", sweep_threads, "Worker threads")->capture_default_str();

    std::string complexity_path;
    bool tight_b = false;
    std::string complexity_out;
    CLI::App* complexity = app.add_subcommand("complexity", "Evaluate complexity measures and bounds");
    complexity->add_option("instance", complexity_path, "Instance JSON file")->required();
    complexity->add_flag("--tight-bernoulli-b", tight_b,
                         "Use the tight Bernoulli deviation bound max(p, 1-p) instead of 1");
    complexity->add_option("--out", complexity_out, "Write the report here instead of stdout");

    std::string validate_path;
    CLI::App* validate = app.add_subcommand("validate", "Validate an instance file (exit 0/1)");
    validate->add_option("instance", validate_path, "Instance JSON file")->required();

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "Write generated instance families to JSON files");
    gen->add_option("--family", gen_args.family, "synthetic|figure1|theorem2|theorem3|b5")->required();
    gen->add_option("--out", gen_args.out, "Output path (synthetic) or filename prefix (families)");
    gen->add_option("--shape", gen_args.shape, "onegroup|trap|polynomial|geometric")->capture_default_str();
    gen->add_option("--pattern", gen_args.pattern, "hmh|hml|mixture")->capture_default_str();
    gen->add_option("--kind", gen_args.kind, "deterministic|uncorrelated|correlated")
        ->capture_default_str();
    gen->add_option("--K", gen_args.K, "Number of arms")->capture_default_str();
    gen->add_option("--L", gen_args.L, "Number of resources (synthetic)")->capture_default_str();
    gen->add_option("--budget", gen_args.budgets, "Budget per resource (repeatable)");
    gen->add_option("--d", gen_args.d, "figure1: per-pull mean consumption in (0,1)")
        ->capture_default_str();
    gen->add_option("--r", gen_args.r, "theorem2/theorem3: mean rewards, descending (repeatable)");
    gen->add_option("--cons-mean", gen_args.cons_means,
                    "theorem2: consumption means; theorem3: base means d0 (repeatable, descending)");
    gen->add_option("--cons", gen_args.cons, "theorem2 consumption preset: deterministic|uniform")
        ->capture_default_str();
    gen->add_option("--c", gen_args.c, "theorem3 scale factor in (0,1)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return cmd_run(run_args);
        if (sweep->parsed()) {
            baiwrc::SweepConfig config = baiwrc::parse_sweep_config(sweep_config);
            if (!sweep_out.empty()) config.out = sweep_out;
            if (sweep_threads < 1) throw UsageError("--threads must be at least 1");
            if (config.out.empty()) {
                baiwrc::run_sweep(config, sweep_threads, std::cout);
            } else {
                auto out = open_out(config.out);
                baiwrc::run_sweep(config, sweep_threads, out);
            }
            return 0;
        }
        if (complexity->parsed()) {
            const baiwrc::Instance instance =
                baiwrc::parse_instance(complexity_path, baiwrc::ParseOptions{tight_b});
            emit_json(baiwrc::complexity_report_to_json(baiwrc::complexity_report(instance)),
                      complexity_out);
            return 0;
        }
        if (validate->parsed()) {
            baiwrc::parse_instance(validate_path);
            return 0;
        }
        if (gen->parsed()) return cmd_gen(gen_args);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
