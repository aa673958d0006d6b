#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "baiwrc/instance.hpp"
#include "baiwrc/policies.hpp"

namespace baiwrc {

struct TrialResult {
    int psi = 0;             // recommended arm, 0-based
    std::uint64_t tau = 0;   // total pulls, including a breaching pull
    std::vector<double> totals;  // per-resource consumption, including a breaching pull
    bool feasible = true;    // false when a budget breach terminated the policy
    std::vector<std::uint64_t> pulls_per_arm;
};

struct FailureStats {
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double p_hat = 0.0;
    double ci_lo = 0.0;  // Wilson 95%
    double ci_hi = 0.0;
    std::uint64_t base_seed = 0;
};

// Wilson 95% score interval for failures out of trials.
std::pair<double, double> wilson_interval(std::uint64_t failures, std::uint64_t trials);

// Called after a pull is accounted (totals updated), before breach handling;
// used by tests to assert per-pull invariants.
using PullHook = std::function<void(int arm, const Outcome& outcome, const std::vector<double>& totals)>;

// Draws outcomes for arm pulls; the closed-form path samples the instance's
// arm models, the external-arm path shells out per pull.
using Sampler = std::function<Outcome(int arm, Rng& rng)>;

// Drives one policy against a sampler until the policy stops on its own or a
// pull pushes some resource total strictly above its budget. The breaching
// pull counts toward tau/totals but its observation is discarded and the
// recommendation snapshot taken before it is returned.
TrialResult run_trial_with(int num_arms, const std::vector<double>& budgets, const Sampler& sampler,
                           PolicyKind kind, std::uint64_t seed, const PolicyParams& params = {},
                           const PullHook& hook = {});

TrialResult run_trial(const Instance& instance, PolicyKind kind, std::uint64_t seed,
                      const PolicyParams& params = {}, const PullHook& hook = {});

// Monte Carlo failure estimate over N trials; trial i draws its RNG stream
// from mix_seed(base_seed, i), so the result is independent of execution
// order and thread count. If per_trial is non-null it is resized to N and
// filled by trial index.
FailureStats estimate_failure(const Instance& instance, PolicyKind kind, std::uint64_t trials,
                              std::uint64_t base_seed, int threads = 1, const PolicyParams& params = {},
                              std::vector<TrialResult>* per_trial = nullptr);

// CSV rows: trial_id,psi,tau,feasible,consumption_1..L (psi is 1-based).
void write_trials_csv(std::ostream& os, const std::vector<TrialResult>& trials, int num_resources);

}  // namespace baiwrc
