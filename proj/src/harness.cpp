#include "baiwrc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace baiwrc {

std::pair<double, double> wilson_interval(std::uint64_t failures, std::uint64_t trials) {
    if (trials == 0) throw std::invalid_argument("wilson_interval requires trials >= 1");
    const double z = 1.959963984540054;  // 97.5th percentile of the standard normal
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(failures) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    // At the boundary estimates the score interval's root is the boundary
    // itself; snap it so rounding dust like 3e-18 never leaks out.
    const double lo = failures == 0 ? 0.0 : std::max(0.0, center - half);
    const double hi = failures == trials ? 1.0 : std::min(1.0, center + half);
    return {lo, hi};
}

TrialResult run_trial_with(int num_arms, const std::vector<double>& budgets, const Sampler& sampler,
                           PolicyKind kind, std::uint64_t seed, const PolicyParams& params,
                           const PullHook& hook) {
    Rng rng(seed);
    auto policy = make_policy(kind, num_arms, budgets, params);
    TrialResult result;
    result.totals.assign(budgets.size(), 0.0);
    result.pulls_per_arm.assign(num_arms, 0);
    for (;;) {
        const std::optional<int> arm = policy->next_arm();
        if (!arm) {  // the policy stopped on its own (SH-RR after its phases)
            result.psi = policy->recommend();
            result.feasible = true;
            return result;
        }
        const int snapshot = policy->recommend();
        const Outcome outcome = sampler(*arm, rng);
        ++result.tau;
        ++result.pulls_per_arm[*arm];
        bool breached = false;
        for (std::size_t l = 0; l < budgets.size(); ++l) {
            result.totals[l] += outcome.consumption[l];
            if (result.totals[l] > budgets[l]) breached = true;
        }
        if (hook) hook(*arm, outcome, result.totals);
        if (breached) {
            // The breaching pull's reward is discarded: the recommendation is
            // the snapshot taken before the pull.
            result.psi = snapshot;
            result.feasible = false;
            return result;
        }
        policy->observe(outcome);
    }
}

TrialResult run_trial(const Instance& instance, PolicyKind kind, std::uint64_t seed,
                      const PolicyParams& params, const PullHook& hook) {
    Sampler sampler = [&instance](int arm, Rng& rng) { return sample_outcome(instance.arms[arm], rng); };
    return run_trial_with(instance.num_arms(), instance.budgets, sampler, kind, seed, params, hook);
}

FailureStats estimate_failure(const Instance& instance, PolicyKind kind, std::uint64_t trials,
                              std::uint64_t base_seed, int threads, const PolicyParams& params,
                              std::vector<TrialResult>* per_trial) {
    if (trials == 0) throw std::invalid_argument("estimate_failure requires trials >= 1");
    if (threads < 1) threads = 1;
    const int target = best_arm(instance);
    if (per_trial) per_trial->assign(trials, TrialResult{});

    const std::uint64_t workers = std::min<std::uint64_t>(threads, trials);
    std::vector<std::uint64_t> failures_per_worker(workers, 0);
    auto work = [&](std::uint64_t w) {
        // Contiguous block per worker; the failure count is a commutative
        // reduction over per-trial outcomes fixed by mix_seed, so the split
        // does not affect the result.
        const std::uint64_t lo = trials * w / workers;
        const std::uint64_t hi = trials * (w + 1) / workers;
        std::uint64_t failures = 0;
        for (std::uint64_t i = lo; i < hi; ++i) {
            TrialResult r = run_trial(instance, kind, mix_seed(base_seed, i), params);
            if (r.psi != target) ++failures;
            if (per_trial) (*per_trial)[i] = std::move(r);
        }
        failures_per_worker[w] = failures;
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (std::thread& t : pool) t.join();
    }

    FailureStats stats;
    stats.trials = trials;
    for (std::uint64_t f : failures_per_worker) stats.failures += f;
    stats.p_hat = static_cast<double>(stats.failures) / static_cast<double>(trials);
    std::tie(stats.ci_lo, stats.ci_hi) = wilson_interval(stats.failures, trials);
    stats.base_seed = base_seed;
    return stats;
}

void write_trials_csv(std::ostream& os, const std::vector<TrialResult>& trials, int num_resources) {
    os << "trial_id,psi,tau,feasible";
    for (int l = 1; l <= num_resources; ++l) os << ",consumption_" << l;
    os << "\n";
    char buf[32];
    for (std::size_t i = 0; i < trials.size(); ++i) {
        const TrialResult& r = trials[i];
        os << i << "," << (r.psi + 1) << "," << r.tau << "," << (r.feasible ? 1 : 0);
        for (int l = 0; l < num_resources; ++l) {
            std::snprintf(buf, sizeof buf, "%.17g", r.totals[l]);
            os << "," << buf;
        }
        os << "\n";
    }
}

}  // namespace baiwrc
