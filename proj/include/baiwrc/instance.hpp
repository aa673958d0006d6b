#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "baiwrc/distribution.hpp"
#include "baiwrc/rng.hpp"

namespace baiwrc {

// Raised by instance/construction validation; the message names the offending
// field, e.g. "arms[3].consumption[0]: mean 0 not allowed".
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Coupling { Independent, SharedUniform };

struct ArmModel {
    DistributionSpec reward;
    std::vector<DistributionSpec> consumption;  // one marginal per resource
    Coupling coupling = Coupling::Independent;

    bool operator==(const ArmModel&) const = default;
};

// Per-resource envelope: |D - d| <= b almost surely and Var(D) <= sigma2,
// uniformly over arms, with sigma2 <= b^2.
struct Envelope {
    double b = 0.0;
    double sigma2 = 0.0;

    bool operator==(const Envelope&) const = default;
};

// One pull's realization (reward; consumption per resource).
struct Outcome {
    double reward = 0.0;
    std::vector<double> consumption;
};

// A full problem: K arms, L budgets, and a consumption envelope per resource.
// Immutable after construction through make_instance/validate_instance.
struct Instance {
    std::vector<ArmModel> arms;
    std::vector<double> budgets;
    std::vector<Envelope> envelope;
    // True when the envelope was supplied by the caller rather than derived;
    // serialization emits an envelope_override field only in that case.
    bool envelope_overridden = false;

    int num_arms() const { return static_cast<int>(arms.size()); }
    int num_resources() const { return static_cast<int>(budgets.size()); }

    bool operator==(const Instance&) const = default;
};

struct InstanceOptions {
    std::optional<std::vector<Envelope>> envelope_override;
    // Use the tight Bernoulli deviation bound max(d, 1-d) instead of the
    // default convention b = 1.
    bool tight_bernoulli_b = false;
};

struct Means {
    std::vector<double> reward;                    // [arm]
    std::vector<std::vector<double>> consumption;  // [resource][arm]
};

// Derives the per-resource envelope from the arm marginals: b = max over arms
// of the almost-sure deviation bound (Bernoulli widened to 1 unless
// tight_bernoulli_b), sigma2 = max over arms of the variance, then clamped so
// sigma2 <= b^2.
std::vector<Envelope> tight_envelope(const std::vector<ArmModel>& arms, std::size_t num_resources,
                                     bool tight_bernoulli_b = false);

// Validates arms/budgets, fills in the envelope, and returns the finished
// instance. Throws ValidationError naming the offending field.
Instance make_instance(std::vector<ArmModel> arms, std::vector<double> budgets,
                       const InstanceOptions& options = {});

// Re-checks every invariant of an already-built instance.
void validate_instance(const Instance& instance);

Means means(const Instance& instance);

// Index (0-based) of the unique arm with maximal mean reward.
int best_arm(const Instance& instance);

Outcome sample_outcome(const ArmModel& arm, Rng& rng);

// Copy of the instance with arms permuted into descending mean-reward order
// (ties by original index); used to evaluate measures defined on the
// reward-sorted labelling.
Instance sorted_by_reward(const Instance& instance);

}  // namespace baiwrc
