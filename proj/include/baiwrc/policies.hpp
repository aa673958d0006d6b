#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "baiwrc/instance.hpp"

namespace baiwrc {

enum class PolicyKind { Shrr, Uniform, Ucb, Atlucb, Dsh };

PolicyKind parse_policy_kind(const std::string& name);  // shrr|uniform|ucb|atlucb|dsh
std::string to_string(PolicyKind kind);

using PolicyParams = std::map<std::string, double>;

// Sequential-policy contract driven by the harness. Calls alternate strictly:
// next_arm(), then observe() with that pull's outcome. next_arm() returning
// nullopt means the policy has stopped (SH-RR after its final phase);
// baselines never stop on their own — the harness terminates them at the
// first budget breach. recommend() is callable at any time and defaults to
// arm 0 before any data.
class Policy {
  public:
    virtual ~Policy() = default;
    virtual std::optional<int> next_arm() = 0;
    virtual void observe(const Outcome& outcome) = 0;
    virtual int recommend() const = 0;
};

std::unique_ptr<Policy> make_policy(PolicyKind kind, int num_arms, const std::vector<double>& budgets,
                                    const PolicyParams& params = {});

// Sequential Halving with Resource Rationing. Runs ceil(log2 K) phases; each
// phase round-robins over the surviving arms while every resource's phase
// consumption I_l stays at most Ration_l - 1, eliminates down to ceil(|S|/2)
// survivors by cumulative empirical mean, and rolls unused ration into the
// next phase's allotment. Never exceeds any budget.
class ShrrPolicy final : public Policy {
  public:
    ShrrPolicy(int num_arms, std::vector<double> budgets);

    std::optional<int> next_arm() override;
    void observe(const Outcome& outcome) override;
    int recommend() const override;

    bool finished() const { return done_; }
    int phase() const { return phase_; }
    int num_phases() const { return phases_; }
    // Pull counts per phase (filled as phases complete).
    const std::vector<std::uint64_t>& phase_pulls() const { return phase_pulls_; }
    // Phase consumption records I^(q) per completed phase, per resource.
    const std::vector<std::vector<double>>& phase_consumed() const { return consumed_history_; }
    // Current rations; after completion this is Ration^(num_phases).
    const std::vector<double>& ration() const { return ration_; }
    const std::vector<int>& survivors() const { return survivors_; }

  private:
    bool within_ration() const;
    void end_phase();

    int num_arms_;
    std::vector<double> budgets_;
    int phases_;
    int phase_ = 0;
    bool done_ = false;
    std::vector<int> survivors_;
    std::vector<double> ration_;
    std::vector<double> phase_consumption_;  // I^(q), current phase
    std::uint64_t t_ = 1;                    // global step, never resets
    std::vector<double> reward_sum_;         // cumulative across phases
    std::vector<std::uint64_t> pull_count_;
    std::vector<std::uint64_t> phase_pulls_;
    std::vector<std::vector<double>> consumed_history_;
    int pending_arm_ = -1;
};

// Round-robin over all arms; recommends the empirical-mean argmax.
class UniformPolicy final : public Policy {
  public:
    UniformPolicy(int num_arms);
    std::optional<int> next_arm() override;
    void observe(const Outcome& outcome) override;
    int recommend() const override;

  private:
    int num_arms_;
    std::uint64_t pulls_ = 0;
    int pending_arm_ = -1;
    std::vector<double> reward_sum_;
    std::vector<std::uint64_t> pull_count_;
};

// UCB1: pull argmax mean + sqrt(2 ln t / n), unpulled arms first; recommends
// the empirical-mean argmax.
class UcbPolicy final : public Policy {
  public:
    UcbPolicy(int num_arms);
    std::optional<int> next_arm() override;
    void observe(const Outcome& outcome) override;
    int recommend() const override;

  private:
    int num_arms_;
    std::uint64_t pulls_ = 0;
    int pending_arm_ = -1;
    std::vector<double> reward_sum_;
    std::vector<std::uint64_t> pull_count_;
};

// Anytime LUCB: repeatedly pulls the empirical leader and the strongest
// challenger by upper confidence bound, with confidence schedule
// delta_s = delta1 * alpha^(s-1); the stage advances whenever the LUCB
// stopping test holds at the current delta. Recommends the empirical argmax.
class AtlucbPolicy final : public Policy {
  public:
    AtlucbPolicy(int num_arms, double delta1 = 0.01, double alpha = 0.99);
    std::optional<int> next_arm() override;
    void observe(const Outcome& outcome) override;
    int recommend() const override;

  private:
    double radius(int arm, double delta) const;
    void plan_round();

    int num_arms_;
    double delta1_, alpha_;
    std::uint64_t stage_ = 1;
    std::uint64_t pulls_ = 0;
    int pending_arm_ = -1;
    std::vector<int> queue_;  // up to two planned pulls (leader, challenger)
    std::size_t queue_pos_ = 0;
    std::vector<double> reward_sum_;
    std::vector<std::uint64_t> pull_count_;
};

// Sequential halving (fresh per-round statistics) restarted with doubled pull
// budgets B_j = K * 2^j; recommends the winner of the last completed run.
class DoublingShPolicy final : public Policy {
  public:
    DoublingShPolicy(int num_arms);
    std::optional<int> next_arm() override;
    void observe(const Outcome& outcome) override;
    int recommend() const override;

  private:
    void start_run();
    void finish_round();

    int num_arms_;
    int rounds_per_run_;
    std::uint64_t run_budget_;
    int round_ = 0;
    std::uint64_t per_arm_ = 0;   // pulls per surviving arm this round
    std::uint64_t round_pos_ = 0;
    std::vector<int> survivors_;
    std::vector<double> round_sum_;
    std::vector<std::uint64_t> round_count_;
    int pending_arm_ = -1;
    int recommendation_ = 0;
};

}  // namespace baiwrc
