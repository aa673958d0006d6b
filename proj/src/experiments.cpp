#include "baiwrc/experiments.hpp"

#include <cmath>
#include <stdexcept>

namespace baiwrc {

RewardShape parse_reward_shape(const std::string& name) {
    if (name == "onegroup") return RewardShape::OneGroup;
    if (name == "trap") return RewardShape::Trap;
    if (name == "polynomial") return RewardShape::Polynomial;
    if (name == "geometric") return RewardShape::Geometric;
    throw std::invalid_argument("unknown reward shape '" + name +
                                "' (expected onegroup|trap|polynomial|geometric)");
}

ConsumptionPattern parse_consumption_pattern(const std::string& name) {
    if (name == "hmh") return ConsumptionPattern::HmH;
    if (name == "hml") return ConsumptionPattern::HmL;
    if (name == "mixture") return ConsumptionPattern::Mixture;
    throw std::invalid_argument("unknown consumption pattern '" + name + "' (expected hmh|hml|mixture)");
}

ConsumptionKind parse_consumption_kind(const std::string& name) {
    if (name == "deterministic") return ConsumptionKind::Deterministic;
    if (name == "uncorrelated") return ConsumptionKind::Uncorrelated;
    if (name == "correlated") return ConsumptionKind::Correlated;
    throw std::invalid_argument("unknown consumption kind '" + name +
                                "' (expected deterministic|uncorrelated|correlated)");
}

std::string to_string(RewardShape shape) {
    switch (shape) {
        case RewardShape::OneGroup: return "onegroup";
        case RewardShape::Trap: return "trap";
        case RewardShape::Polynomial: return "polynomial";
        case RewardShape::Geometric: return "geometric";
    }
    return "?";
}

std::string to_string(ConsumptionPattern pattern) {
    switch (pattern) {
        case ConsumptionPattern::HmH: return "hmh";
        case ConsumptionPattern::HmL: return "hml";
        case ConsumptionPattern::Mixture: return "mixture";
    }
    return "?";
}

std::string to_string(ConsumptionKind kind) {
    switch (kind) {
        case ConsumptionKind::Deterministic: return "deterministic";
        case ConsumptionKind::Uncorrelated: return "uncorrelated";
        case ConsumptionKind::Correlated: return "correlated";
    }
    return "?";
}

std::vector<double> shape_rewards(RewardShape shape, int K) {
    if (K < 2) throw std::invalid_argument("reward shapes require K >= 2");
    std::vector<double> r(K);
    switch (shape) {
        case RewardShape::OneGroup:
            r[0] = 0.9;
            for (int i = 2; i <= K; ++i) r[i - 1] = 0.8;
            break;
        case RewardShape::Trap: {
            const int trap_end = (K + 7) / 8;  // arms 2..ceil(K/8) sit just below the best
            r[0] = 0.9;
            for (int i = 2; i <= K; ++i) r[i - 1] = i <= trap_end ? 0.8 : 0.1;
            break;
        }
        case RewardShape::Polynomial:
            r[0] = 0.9;
            for (int i = 2; i <= K; ++i)
                r[i - 1] = 0.9 * (1.0 - std::sqrt(static_cast<double>(i) / K));
            break;
        case RewardShape::Geometric:
            for (int i = 1; i <= K; ++i)
                r[i - 1] = 0.9 * std::pow(1.0 / 9.0, static_cast<double>(i - 1) / (K - 1));
            break;
    }
    return r;
}

Instance gen_synthetic(const SetupSpec& spec) {
    if (spec.K < 2) throw std::invalid_argument("gen_synthetic: K >= 2 required");
    if (spec.L < 1) throw std::invalid_argument("gen_synthetic: L >= 1 required");
    if (static_cast<int>(spec.budgets.size()) != spec.L)
        throw std::invalid_argument("gen_synthetic: budgets length must equal L");
    if (spec.pattern == ConsumptionPattern::Mixture && spec.L != 2)
        throw std::invalid_argument("gen_synthetic: mixture pattern requires L = 2");
    if (spec.kind == ConsumptionKind::Deterministic && spec.L != 1)
        throw std::invalid_argument("gen_synthetic: deterministic kind requires L = 1");

    const std::vector<double> r = shape_rewards(spec.shape, spec.K);
    const int half = (spec.K + 1) / 2;  // first ceil(K/2) arms form the high-consumption block

    std::vector<ArmModel> arms(spec.K);
    for (int k = 0; k < spec.K; ++k) {
        ArmModel& arm = arms[k];
        arm.reward = DistributionSpec::bernoulli(r[k]);
        arm.consumption.resize(spec.L);
        for (int l = 0; l < spec.L; ++l) {
            // HmH: the high-reward half consumes 0.9; HmL: reversed; Mixture:
            // resource 1 like HmL, resource 2 like HmH.
            bool high = k < half;
            if (spec.pattern == ConsumptionPattern::HmL ||
                (spec.pattern == ConsumptionPattern::Mixture && l == 0))
                high = !high;
            const double d = high ? 0.9 : 0.1;
            arm.consumption[l] = spec.kind == ConsumptionKind::Deterministic
                                     ? DistributionSpec::deterministic(d)
                                     : DistributionSpec::bernoulli(d);
        }
        arm.coupling = spec.kind == ConsumptionKind::Correlated ? Coupling::SharedUniform
                                                                : Coupling::Independent;
    }
    return make_instance(std::move(arms), spec.budgets);
}

std::pair<Instance, Instance> gen_figure1_pair(double d) {
    if (!(d > 0.0 && d < 1.0)) throw std::invalid_argument("gen_figure1_pair: d must lie in (0,1)");
    auto build = [d](bool stochastic) {
        std::vector<ArmModel> arms(2);
        arms[0].reward = DistributionSpec::bernoulli(0.5);
        arms[1].reward = DistributionSpec::bernoulli(0.4);
        for (ArmModel& arm : arms) {
            arm.consumption = {stochastic ? DistributionSpec::bernoulli(d)
                                          : DistributionSpec::deterministic(d)};
            arm.coupling = Coupling::Independent;
        }
        return make_instance(std::move(arms), {2.0});
    };
    return {build(false), build(true)};
}

namespace {

// Shared validation for the lower-bound families' reward vectors.
void check_flip_rewards(const std::vector<double>& r) {
    if (r.size() < 2) throw std::invalid_argument("lower-bound family: K >= 2 required");
    if (r[0] != 0.5) throw std::invalid_argument("lower-bound family: r_1 must equal 1/2");
    if (!(r[1] < 0.5))
        throw std::invalid_argument("lower-bound family: r_2 must be strictly below 1/2 "
                                    "(a unique best arm is required in every member)");
    for (std::size_t k = 1; k < r.size(); ++k) {
        if (r[k] > r[k - 1]) throw std::invalid_argument("lower-bound family: rewards must be non-increasing");
        if (!(r[k] > 0.0)) throw std::invalid_argument("lower-bound family: rewards must be positive");
    }
}

// Gaussian N(r_k, 1) rewards with arm i (1-based; i = 0 for the base
// instance) flipped to N(1 - r_i, 1).
std::vector<DistributionSpec> flipped_rewards(const std::vector<double>& r, int i) {
    std::vector<DistributionSpec> out(r.size());
    for (std::size_t k = 0; k < r.size(); ++k)
        out[k] = DistributionSpec::gaussian(static_cast<int>(k) + 1 == i ? 1.0 - r[k] : r[k], 1.0);
    return out;
}

}  // namespace

std::vector<Instance> gen_theorem2_family(const std::vector<double>& r,
                                          const std::vector<std::vector<DistributionSpec>>& cons,
                                          const std::vector<double>& budgets) {
    check_flip_rewards(r);
    const std::size_t K = r.size();
    const std::size_t L = budgets.size();
    if (cons.size() != L) throw std::invalid_argument("theorem2 family: one consumption list per resource required");
    for (std::size_t l = 0; l < L; ++l) {
        if (cons[l].size() != K) throw std::invalid_argument("theorem2 family: each consumption list needs K entries");
        for (std::size_t j = 0; j < K; ++j) {
            const double m = cons[l][j].mean();
            if (!(m > 0.0 && m <= 1.0))
                throw std::invalid_argument("theorem2 family: consumption means must lie in (0,1]");
            if (j > 0 && m > cons[l][j - 1].mean())
                throw std::invalid_argument("theorem2 family: consumption means must be sorted descending");
        }
    }

    // The swap places the second-largest consumption on the best arm; it is
    // identical in every member.
    auto swapped = [&](std::size_t l, std::size_t k) -> const DistributionSpec& {
        if (k == 0) return cons[l][1];
        if (k == 1) return cons[l][0];
        return cons[l][k];
    };

    std::vector<Instance> family;
    family.reserve(K);
    for (std::size_t i = 1; i <= K; ++i) {
        const std::vector<DistributionSpec> rewards = flipped_rewards(r, static_cast<int>(i));
        std::vector<ArmModel> arms(K);
        for (std::size_t k = 0; k < K; ++k) {
            arms[k].reward = rewards[k];
            arms[k].consumption.resize(L);
            for (std::size_t l = 0; l < L; ++l) arms[k].consumption[l] = swapped(l, k);
            arms[k].coupling = Coupling::Independent;
        }
        family.push_back(make_instance(std::move(arms), budgets));
    }
    return family;
}

std::vector<Instance> gen_theorem3_family(const std::vector<double>& r, const std::vector<double>& d0,
                                          double c, const std::vector<double>& budgets) {
    check_flip_rewards(r);
    const std::size_t K = r.size();
    if (r.back() != 0.25) throw std::invalid_argument("theorem3 family: r_K must equal 1/4");
    if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("theorem3 family: c must lie in (0,1)");
    if (d0.size() != K) throw std::invalid_argument("theorem3 family: d0 needs K entries");
    for (std::size_t j = 0; j < K; ++j) {
        if (!(d0[j] > 0.0)) throw std::invalid_argument("theorem3 family: base means must be positive");
        if (j > 0 && d0[j] > d0[j - 1])
            throw std::invalid_argument("theorem3 family: base means must be sorted descending");
        if (!(c * d0[j] < 1.0)) throw std::invalid_argument("theorem3 family: scaled mean c*d0 must stay below 1");
    }

    std::vector<Instance> family;
    family.reserve(K);
    for (std::size_t i = 1; i <= K; ++i) {
        const std::vector<DistributionSpec> rewards = flipped_rewards(r, static_cast<int>(i));
        std::vector<ArmModel> arms(K);
        for (std::size_t k = 0; k < K; ++k) {
            arms[k].reward = rewards[k];
            arms[k].consumption.assign(budgets.size(), DistributionSpec::bernoulli(c * d0[k]));
            arms[k].coupling = Coupling::Independent;
        }
        family.push_back(make_instance(std::move(arms), budgets));
    }
    return family;
}

Theorem3Condition theorem3_condition(const std::vector<double>& r, const std::vector<double>& d0,
                                     double c, const std::vector<double>& budgets,
                                     const std::function<double(double)>& g, int i) {
    const std::size_t K = r.size();
    if (i < 2 || static_cast<std::size_t>(i) > K)
        throw std::invalid_argument("theorem3 condition: flip index i must lie in {2..K}");
    const std::size_t L = budgets.size();
    Theorem3Condition cond;
    cond.g_small = cond.flip_mass = cond.info_budget = cond.budget_floor = cond.log_scale = true;
    for (std::size_t l = 0; l < L; ++l) {
        const double di = c * d0[i - 1];  // d_{l,(i)}: means are assigned in sorted order
        const double log_inv = std::log(1.0 / di);
        for (std::size_t k = 0; k < K; ++k)
            if (!(g(c * d0[k]) < 1.0 / log_inv)) cond.g_small = false;
        if (!(std::log(1.0 / (1.0 - di)) < 0.5)) cond.flip_mass = false;
        double sum = g(c * d0[0]) / ((r[0] - r[1]) * (r[0] - r[1]));
        for (std::size_t k = 3; k <= K; ++k)
            sum += g(c * d0[k - 1]) / ((r[0] - r[k - 1]) * (r[0] - r[k - 1]));
        if (!(128.0 * sum * log_inv < 1.0)) cond.info_budget = false;
        if (!(budgets[l] > std::log(64.0))) cond.budget_floor = false;
        if (!(log_inv > 1.0)) cond.log_scale = false;
    }
    return cond;
}

std::vector<Instance> gen_appendix_b5_family(int K, double budget) {
    if (K < 2) throw std::invalid_argument("appendix-b5 family: K >= 2 required");
    std::vector<double> d(K), r(K);
    d[0] = std::exp2(2 - K);
    r[0] = 0.5;
    for (int k = 2; k <= K; ++k) {
        d[k - 1] = std::exp2(k - K);
        r[k - 1] = 0.5 - std::exp2(0.5 * (k - K - 4));
    }
    std::vector<Instance> family;
    family.reserve(K);
    for (int i = 1; i <= K; ++i) {
        std::vector<ArmModel> arms(K);
        for (int k = 0; k < K; ++k) {
            const double mean = k + 1 == i ? 1.0 - r[k] : r[k];
            arms[k].reward = DistributionSpec::bernoulli(mean);
            arms[k].consumption = {DistributionSpec::deterministic(d[k])};
            arms[k].coupling = Coupling::Independent;
        }
        family.push_back(make_instance(std::move(arms), {budget}));
    }
    return family;
}

}  // namespace baiwrc
