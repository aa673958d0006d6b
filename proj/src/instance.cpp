#include "baiwrc/instance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace baiwrc {

namespace {

std::string arm_field(std::size_t k) {
    std::ostringstream os;
    os << "arms[" << k << "]";
    return os.str();
}

void validate_reward(const DistributionSpec& d, const std::string& path) {
    switch (d.kind) {
        case DistKind::Deterministic:
        case DistKind::Bernoulli:
            if (d.a < 0.0 || d.a > 1.0)
                throw ValidationError(path + ": reward mean " + std::to_string(d.a) + " outside [0,1]");
            break;
        case DistKind::Uniform:
            if (!(d.a <= d.b)) throw ValidationError(path + ": uniform requires lo <= hi");
            if (d.a < 0.0 || d.b > 1.0) throw ValidationError(path + ": reward support outside [0,1]");
            break;
        case DistKind::Gaussian:
            if (d.b < 0.0) throw ValidationError(path + ": negative variance");
            break;
    }
}

void validate_consumption(const DistributionSpec& d, const std::string& path) {
    switch (d.kind) {
        case DistKind::Gaussian:
            throw ValidationError(path + ": gaussian consumption not allowed (support must be within [0,1])");
        case DistKind::Uniform:
            if (!(d.a <= d.b)) throw ValidationError(path + ": uniform requires lo <= hi");
            break;
        default:
            break;
    }
    if (d.support_lo() < 0.0 || d.support_hi() > 1.0)
        throw ValidationError(path + ": consumption support outside [0,1]");
    if (d.mean() <= 0.0) throw ValidationError(path + ": mean 0 not allowed");
}

}  // namespace

std::vector<Envelope> tight_envelope(const std::vector<ArmModel>& arms, std::size_t num_resources,
                                     bool tight_bernoulli_b) {
    std::vector<Envelope> env(num_resources);
    for (std::size_t l = 0; l < num_resources; ++l) {
        double b = 0.0, s2 = 0.0;
        for (const ArmModel& arm : arms) {
            const DistributionSpec& d = arm.consumption[l];
            double dev = d.deviation_bound();
            if (d.kind == DistKind::Bernoulli && !tight_bernoulli_b) dev = 1.0;
            b = std::max(b, dev);
            s2 = std::max(s2, d.variance());
        }
        env[l] = Envelope{b, std::min(s2, b * b)};
    }
    return env;
}

Instance make_instance(std::vector<ArmModel> arms, std::vector<double> budgets,
                       const InstanceOptions& options) {
    Instance inst;
    inst.arms = std::move(arms);
    inst.budgets = std::move(budgets);
    if (options.envelope_override) {
        inst.envelope = *options.envelope_override;
        inst.envelope_overridden = true;
    } else {
        if (inst.budgets.empty()) throw ValidationError("budgets: at least one resource required");
        for (const ArmModel& arm : inst.arms)
            if (arm.consumption.size() != inst.budgets.size())
                throw ValidationError("arms: consumption list length must equal number of budgets");
        inst.envelope = tight_envelope(inst.arms, inst.budgets.size(), options.tight_bernoulli_b);
    }
    validate_instance(inst);
    return inst;
}

void validate_instance(const Instance& inst) {
    const std::size_t K = inst.arms.size();
    const std::size_t L = inst.budgets.size();
    if (K < 1) throw ValidationError("arms: at least one arm required");
    if (L < 1) throw ValidationError("budgets: at least one resource required");
    for (std::size_t l = 0; l < L; ++l) {
        if (!(inst.budgets[l] >= 0.0) || !std::isfinite(inst.budgets[l]))
            throw ValidationError("budgets[" + std::to_string(l) + "]: must be finite and non-negative");
    }
    if (inst.envelope.size() != L)
        throw ValidationError("envelope: length " + std::to_string(inst.envelope.size()) +
                              " does not match number of budgets " + std::to_string(L));

    for (std::size_t k = 0; k < K; ++k) {
        const ArmModel& arm = inst.arms[k];
        const std::string base = arm_field(k);
        validate_reward(arm.reward, base + ".reward");
        if (arm.consumption.size() != L)
            throw ValidationError(base + ".consumption: length " + std::to_string(arm.consumption.size()) +
                                  " does not match number of budgets " + std::to_string(L));
        for (std::size_t l = 0; l < L; ++l)
            validate_consumption(arm.consumption[l], base + ".consumption[" + std::to_string(l) + "]");
        if (arm.coupling == Coupling::SharedUniform) {
            auto thresholdable = [](const DistributionSpec& d) {
                return d.kind == DistKind::Bernoulli || d.kind == DistKind::Deterministic;
            };
            if (!thresholdable(arm.reward))
                throw ValidationError(base + ".coupling: shared_uniform requires bernoulli or deterministic reward");
            for (std::size_t l = 0; l < L; ++l)
                if (!thresholdable(arm.consumption[l]))
                    throw ValidationError(base + ".coupling: shared_uniform requires bernoulli or deterministic consumption");
        }
    }

    // Unique best arm.
    if (K >= 2) {
        double top = -std::numeric_limits<double>::infinity();
        int count = 0;
        for (const ArmModel& arm : inst.arms) {
            const double r = arm.reward.mean();
            if (r > top) {
                top = r;
                count = 1;
            } else if (r == top) {
                ++count;
            }
        }
        if (count != 1) throw ValidationError("arms: unique best arm required");
    }

    // Envelope dominance over every arm's marginal, and sigma2 <= b^2.
    for (std::size_t l = 0; l < L; ++l) {
        const Envelope& env = inst.envelope[l];
        const std::string path = "envelope[" + std::to_string(l) + "]";
        if (env.b < 0.0 || env.sigma2 < 0.0) throw ValidationError(path + ": negative parameter");
        if (env.sigma2 > env.b * env.b)
            throw ValidationError(path + ": sigma2 " + std::to_string(env.sigma2) + " exceeds b^2 " +
                                  std::to_string(env.b * env.b));
        for (std::size_t k = 0; k < K; ++k) {
            const DistributionSpec& d = inst.arms[k].consumption[l];
            if (d.deviation_bound() > env.b)
                throw ValidationError(path + ": b " + std::to_string(env.b) + " does not dominate " +
                                      arm_field(k) + ".consumption[" + std::to_string(l) + "]");
            if (d.variance() > env.sigma2)
                throw ValidationError(path + ": sigma2 " + std::to_string(env.sigma2) + " does not dominate " +
                                      arm_field(k) + ".consumption[" + std::to_string(l) + "]");
        }
    }
}

Means means(const Instance& inst) {
    Means m;
    const std::size_t K = inst.arms.size();
    const std::size_t L = inst.budgets.size();
    m.reward.resize(K);
    m.consumption.assign(L, std::vector<double>(K));
    for (std::size_t k = 0; k < K; ++k) {
        m.reward[k] = inst.arms[k].reward.mean();
        for (std::size_t l = 0; l < L; ++l) m.consumption[l][k] = inst.arms[k].consumption[l].mean();
    }
    return m;
}

int best_arm(const Instance& inst) {
    int best = 0;
    double top = inst.arms[0].reward.mean();
    for (int k = 1; k < inst.num_arms(); ++k) {
        const double r = inst.arms[k].reward.mean();
        if (r > top) {
            top = r;
            best = k;
        }
    }
    return best;
}

Outcome sample_outcome(const ArmModel& arm, Rng& rng) {
    Outcome out;
    out.consumption.resize(arm.consumption.size());
    if (arm.coupling == Coupling::SharedUniform) {
        // One uniform variate thresholds every Bernoulli component;
        // deterministic components just emit their value.
        const double u = uniform01(rng);
        auto realize = [u](const DistributionSpec& d) {
            return d.kind == DistKind::Deterministic ? d.a : (u <= d.a ? 1.0 : 0.0);
        };
        out.reward = realize(arm.reward);
        for (std::size_t l = 0; l < arm.consumption.size(); ++l)
            out.consumption[l] = realize(arm.consumption[l]);
    } else {
        out.reward = arm.reward.sample(rng);
        for (std::size_t l = 0; l < arm.consumption.size(); ++l)
            out.consumption[l] = arm.consumption[l].sample(rng);
    }
    return out;
}

Instance sorted_by_reward(const Instance& inst) {
    std::vector<std::size_t> order(inst.arms.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return inst.arms[i].reward.mean() > inst.arms[j].reward.mean();
    });
    Instance out = inst;
    for (std::size_t pos = 0; pos < order.size(); ++pos) out.arms[pos] = inst.arms[order[pos]];
    return out;
}

}  // namespace baiwrc
