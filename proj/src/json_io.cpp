#include "baiwrc/json_io.hpp"

#include <fstream>

namespace baiwrc {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ValidationError(path + ": " + what);
}

double get_number(const Json& j, const std::string& path, const char* key) {
    if (!j.contains(key)) fail(path, std::string("missing field '") + key + "'");
    const Json& v = j.at(key);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    return v.get<double>();
}

DistributionSpec dist_from_json(const Json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    if (!j.contains("kind")) fail(path, "missing field 'kind'");
    const std::string kind = j.at("kind").is_string() ? j.at("kind").get<std::string>() : std::string();
    if (kind == "deterministic") return DistributionSpec::deterministic(get_number(j, path, "value"));
    if (kind == "bernoulli") return DistributionSpec::bernoulli(get_number(j, path, "mean"));
    if (kind == "uniform")
        return DistributionSpec::uniform(get_number(j, path, "lo"), get_number(j, path, "hi"));
    if (kind == "gaussian")
        return DistributionSpec::gaussian(get_number(j, path, "mean"), get_number(j, path, "variance"));
    fail(path + ".kind", "unknown distribution kind '" + kind + "'");
}

Json dist_to_json(const DistributionSpec& d) {
    Json j;
    j["kind"] = to_string(d.kind);
    switch (d.kind) {
        case DistKind::Deterministic: j["value"] = d.a; break;
        case DistKind::Bernoulli: j["mean"] = d.a; break;
        case DistKind::Uniform:
            j["lo"] = d.a;
            j["hi"] = d.b;
            break;
        case DistKind::Gaussian:
            j["mean"] = d.a;
            j["variance"] = d.b;
            break;
    }
    return j;
}

}  // namespace

Instance instance_from_json(const Json& j, const ParseOptions& options) {
    if (!j.is_object()) fail("instance", "expected a JSON object");
    if (!j.contains("arms") || !j.at("arms").is_array()) fail("arms", "missing or not an array");
    if (!j.contains("budgets") || !j.at("budgets").is_array()) fail("budgets", "missing or not an array");

    std::vector<double> budgets;
    for (std::size_t l = 0; l < j.at("budgets").size(); ++l) {
        const Json& v = j.at("budgets")[l];
        if (!v.is_number()) fail("budgets[" + std::to_string(l) + "]", "expected a number");
        budgets.push_back(v.get<double>());
    }

    std::vector<ArmModel> arms;
    for (std::size_t k = 0; k < j.at("arms").size(); ++k) {
        const std::string base = "arms[" + std::to_string(k) + "]";
        const Json& a = j.at("arms")[k];
        if (!a.is_object()) fail(base, "expected an object");
        ArmModel arm;
        if (!a.contains("reward")) fail(base, "missing field 'reward'");
        arm.reward = dist_from_json(a.at("reward"), base + ".reward");
        if (!a.contains("consumption") || !a.at("consumption").is_array())
            fail(base + ".consumption", "missing or not an array");
        for (std::size_t l = 0; l < a.at("consumption").size(); ++l)
            arm.consumption.push_back(
                dist_from_json(a.at("consumption")[l], base + ".consumption[" + std::to_string(l) + "]"));
        arm.coupling = Coupling::Independent;
        if (a.contains("coupling")) {
            const std::string c = a.at("coupling").is_string() ? a.at("coupling").get<std::string>() : std::string();
            if (c == "shared_uniform") arm.coupling = Coupling::SharedUniform;
            else if (c != "independent") fail(base + ".coupling", "expected 'independent' or 'shared_uniform'");
        }
        arms.push_back(std::move(arm));
    }

    InstanceOptions opts;
    opts.tight_bernoulli_b = options.tight_bernoulli_b;
    if (j.contains("envelope_override")) {
        const Json& env = j.at("envelope_override");
        if (!env.is_array()) fail("envelope_override", "expected an array");
        std::vector<Envelope> envelope;
        for (std::size_t l = 0; l < env.size(); ++l) {
            const std::string path = "envelope_override[" + std::to_string(l) + "]";
            if (!env[l].is_object()) fail(path, "expected an object");
            envelope.push_back(Envelope{get_number(env[l], path, "b"), get_number(env[l], path, "sigma2")});
        }
        opts.envelope_override = std::move(envelope);
    }
    return make_instance(std::move(arms), std::move(budgets), opts);
}

Instance parse_instance(const std::string& path, const ParseOptions& options) {
    std::ifstream in(path);
    if (!in) throw ValidationError(path + ": cannot open file");
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw ValidationError(path + ": invalid JSON (" + e.what() + ")");
    }
    return instance_from_json(j, options);
}

Json instance_to_json(const Instance& inst) {
    Json j;
    j["arms"] = Json::array();
    for (const ArmModel& arm : inst.arms) {
        Json a;
        a["reward"] = dist_to_json(arm.reward);
        a["consumption"] = Json::array();
        for (const DistributionSpec& d : arm.consumption) a["consumption"].push_back(dist_to_json(d));
        a["coupling"] = arm.coupling == Coupling::SharedUniform ? "shared_uniform" : "independent";
        j["arms"].push_back(std::move(a));
    }
    j["budgets"] = inst.budgets;
    if (inst.envelope_overridden) {
        Json env = Json::array();
        for (const Envelope& e : inst.envelope) env.push_back(Json{{"b", e.b}, {"sigma2", e.sigma2}});
        j["envelope_override"] = std::move(env);
    }
    return j;
}

void write_instance(const std::string& path, const Instance& inst) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << instance_to_json(inst).dump(2) << "\n";
}

Json complexity_report_to_json(const ComplexityReport& rep) {
    Json j;
    j["f_per_rank"] = rep.f_per_rank;
    j["h2_sto"] = rep.h2_sto;
    j["h2_det"] = rep.h2_det;
    j["h1_det"] = rep.h1_det;
    j["h1_refined"] = rep.h1_refined;
    j["h2_refined"] = rep.h2_refined;
    j["gaps"] = rep.gaps;
    j["gamma"] = rep.gamma;
    j["gamma_det"] = rep.gamma_det;
    j["upper_bound_general"] = rep.upper_bound_general;
    j["upper_bound_det"] = rep.upper_bound_det;
    return j;
}

Json failure_stats_to_json(const FailureStats& stats, PolicyKind kind) {
    Json j;
    j["policy"] = to_string(kind);
    j["trials"] = stats.trials;
    j["failures"] = stats.failures;
    j["p_hat"] = stats.p_hat;
    j["ci_lo"] = stats.ci_lo;
    j["ci_hi"] = stats.ci_hi;
    j["seed"] = stats.base_seed;
    return j;
}

}  // namespace baiwrc
