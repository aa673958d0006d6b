#include "baiwrc/policies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "baiwrc/complexity.hpp"

namespace baiwrc {

namespace {

// Empirical mean with the max{count, 1} denominator (never-pulled arms
// report mean 0).
double emp_mean(const std::vector<double>& sums, const std::vector<std::uint64_t>& counts, int arm) {
    return counts[arm] == 0 ? 0.0 : sums[arm] / static_cast<double>(counts[arm]);
}

int argmax_mean(const std::vector<double>& sums, const std::vector<std::uint64_t>& counts) {
    int best = 0;
    double top = emp_mean(sums, counts, 0);
    for (int k = 1; k < static_cast<int>(sums.size()); ++k) {
        const double m = emp_mean(sums, counts, k);
        if (m > top) {
            top = m;
            best = k;
        }
    }
    return best;
}

void check_pending(int pending_arm, bool expect_pending) {
    if (expect_pending && pending_arm < 0) throw std::logic_error("observe() without a preceding next_arm()");
    if (!expect_pending && pending_arm >= 0) throw std::logic_error("next_arm() called with an observation pending");
}

}  // namespace

PolicyKind parse_policy_kind(const std::string& name) {
    if (name == "shrr") return PolicyKind::Shrr;
    if (name == "uniform") return PolicyKind::Uniform;
    if (name == "ucb") return PolicyKind::Ucb;
    if (name == "atlucb") return PolicyKind::Atlucb;
    if (name == "dsh") return PolicyKind::Dsh;
    throw std::invalid_argument("unknown policy '" + name + "' (expected shrr|uniform|ucb|atlucb|dsh)");
}

std::string to_string(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::Shrr: return "shrr";
        case PolicyKind::Uniform: return "uniform";
        case PolicyKind::Ucb: return "ucb";
        case PolicyKind::Atlucb: return "atlucb";
        case PolicyKind::Dsh: return "dsh";
    }
    return "?";
}

std::unique_ptr<Policy> make_policy(PolicyKind kind, int num_arms, const std::vector<double>& budgets,
                                    const PolicyParams& params) {
    auto reject_params = [&params](const char* name) {
        if (!params.empty())
            throw std::invalid_argument(std::string("policy ") + name + " takes no --policy-param");
    };
    switch (kind) {
        case PolicyKind::Shrr:
            reject_params("shrr");
            return std::make_unique<ShrrPolicy>(num_arms, budgets);
        case PolicyKind::Uniform:
            reject_params("uniform");
            return std::make_unique<UniformPolicy>(num_arms);
        case PolicyKind::Ucb:
            reject_params("ucb");
            return std::make_unique<UcbPolicy>(num_arms);
        case PolicyKind::Atlucb: {
            double delta1 = 0.01, alpha = 0.99;
            for (const auto& [key, value] : params) {
                if (key == "delta1") delta1 = value;
                else if (key == "alpha") alpha = value;
                else throw std::invalid_argument("atlucb: unknown parameter '" + key + "'");
            }
            if (!(delta1 > 0.0 && delta1 < 1.0) || !(alpha > 0.0 && alpha < 1.0))
                throw std::invalid_argument("atlucb: delta1 and alpha must lie in (0,1)");
            return std::make_unique<AtlucbPolicy>(num_arms, delta1, alpha);
        }
        case PolicyKind::Dsh:
            reject_params("dsh");
            return std::make_unique<DoublingShPolicy>(num_arms);
    }
    throw std::invalid_argument("unknown policy kind");
}

// ---------------------------------------------------------------- ShrrPolicy

ShrrPolicy::ShrrPolicy(int num_arms, std::vector<double> budgets)
    : num_arms_(num_arms), budgets_(std::move(budgets)), phases_(ceil_log2(num_arms)) {
    if (num_arms_ < 1) throw std::invalid_argument("shrr requires at least one arm");
    survivors_.resize(num_arms_);
    for (int k = 0; k < num_arms_; ++k) survivors_[k] = k;
    reward_sum_.assign(num_arms_, 0.0);
    pull_count_.assign(num_arms_, 0);
    if (phases_ == 0) {  // K = 1: nothing to decide
        done_ = true;
        return;
    }
    ration_.resize(budgets_.size());
    for (std::size_t l = 0; l < budgets_.size(); ++l) ration_[l] = budgets_[l] / phases_;
    phase_consumption_.assign(budgets_.size(), 0.0);
    phase_pulls_.assign(phases_, 0);
}

bool ShrrPolicy::within_ration() const {
    for (std::size_t l = 0; l < ration_.size(); ++l)
        if (!(phase_consumption_[l] <= ration_[l] - 1.0)) return false;
    return true;
}

std::optional<int> ShrrPolicy::next_arm() {
    check_pending(pending_arm_, false);
    while (!done_) {
        if (within_ration()) {
            pending_arm_ = survivors_[(t_ - 1) % survivors_.size()];
            return pending_arm_;
        }
        end_phase();
    }
    return std::nullopt;
}

void ShrrPolicy::observe(const Outcome& outcome) {
    check_pending(pending_arm_, true);
    for (std::size_t l = 0; l < phase_consumption_.size(); ++l)
        phase_consumption_[l] += outcome.consumption[l];
    reward_sum_[pending_arm_] += outcome.reward;
    ++pull_count_[pending_arm_];
    ++phase_pulls_[phase_];
    ++t_;
    pending_arm_ = -1;
}

void ShrrPolicy::end_phase() {
    consumed_history_.push_back(phase_consumption_);
    // Keep the top ceil(|S|/2) survivors by cumulative empirical mean,
    // ties broken toward the lower arm index.
    std::vector<int> order = survivors_;
    std::sort(order.begin(), order.end(), [this](int a, int b) {
        const double ma = emp_mean(reward_sum_, pull_count_, a);
        const double mb = emp_mean(reward_sum_, pull_count_, b);
        if (ma != mb) return ma > mb;
        return a < b;
    });
    order.resize((order.size() + 1) / 2);
    std::sort(order.begin(), order.end());  // round-robin order is by arm index
    survivors_ = std::move(order);
    for (std::size_t l = 0; l < ration_.size(); ++l) {
        ration_[l] = budgets_[l] / phases_ + (ration_[l] - phase_consumption_[l]);
        phase_consumption_[l] = 0.0;
    }
    ++phase_;
    if (phase_ == phases_) done_ = true;
}

int ShrrPolicy::recommend() const {
    int best = survivors_[0];
    double top = emp_mean(reward_sum_, pull_count_, best);
    for (std::size_t i = 1; i < survivors_.size(); ++i) {
        const double m = emp_mean(reward_sum_, pull_count_, survivors_[i]);
        if (m > top) {
            top = m;
            best = survivors_[i];
        }
    }
    return best;
}

// ------------------------------------------------------------- UniformPolicy

UniformPolicy::UniformPolicy(int num_arms) : num_arms_(num_arms) {
    reward_sum_.assign(num_arms_, 0.0);
    pull_count_.assign(num_arms_, 0);
}

std::optional<int> UniformPolicy::next_arm() {
    check_pending(pending_arm_, false);
    pending_arm_ = static_cast<int>(pulls_ % num_arms_);
    return pending_arm_;
}

void UniformPolicy::observe(const Outcome& outcome) {
    check_pending(pending_arm_, true);
    reward_sum_[pending_arm_] += outcome.reward;
    ++pull_count_[pending_arm_];
    ++pulls_;
    pending_arm_ = -1;
}

int UniformPolicy::recommend() const { return argmax_mean(reward_sum_, pull_count_); }

// ----------------------------------------------------------------- UcbPolicy

UcbPolicy::UcbPolicy(int num_arms) : num_arms_(num_arms) {
    reward_sum_.assign(num_arms_, 0.0);
    pull_count_.assign(num_arms_, 0);
}

std::optional<int> UcbPolicy::next_arm() {
    check_pending(pending_arm_, false);
    for (int k = 0; k < num_arms_; ++k) {
        if (pull_count_[k] == 0) {
            pending_arm_ = k;
            return pending_arm_;
        }
    }
    const double t = static_cast<double>(pulls_ + 1);
    int best = 0;
    double top = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < num_arms_; ++k) {
        const double idx = emp_mean(reward_sum_, pull_count_, k) +
                           std::sqrt(2.0 * std::log(t) / static_cast<double>(pull_count_[k]));
        if (idx > top) {
            top = idx;
            best = k;
        }
    }
    pending_arm_ = best;
    return pending_arm_;
}

void UcbPolicy::observe(const Outcome& outcome) {
    check_pending(pending_arm_, true);
    reward_sum_[pending_arm_] += outcome.reward;
    ++pull_count_[pending_arm_];
    ++pulls_;
    pending_arm_ = -1;
}

int UcbPolicy::recommend() const { return argmax_mean(reward_sum_, pull_count_); }

// -------------------------------------------------------------- AtlucbPolicy

AtlucbPolicy::AtlucbPolicy(int num_arms, double delta1, double alpha)
    : num_arms_(num_arms), delta1_(delta1), alpha_(alpha) {
    reward_sum_.assign(num_arms_, 0.0);
    pull_count_.assign(num_arms_, 0);
    queue_.resize(num_arms_);  // initial round: sample every arm once
    for (int k = 0; k < num_arms_; ++k) queue_[k] = k;
}

double AtlucbPolicy::radius(int arm, double delta) const {
    const double t = static_cast<double>(pulls_ + 1);
    const double n = static_cast<double>(pull_count_[arm]);
    return std::sqrt(std::log(1.25 * num_arms_ * t * t * t * t / delta) / (2.0 * n));
}

void AtlucbPolicy::plan_round() {
    double delta = delta1_ * std::pow(alpha_, static_cast<double>(stage_ - 1));
    auto pick = [this](double delta) {
        const int h = argmax_mean(reward_sum_, pull_count_);
        int l = -1;
        double top = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < num_arms_; ++k) {
            if (k == h) continue;
            const double u = emp_mean(reward_sum_, pull_count_, k) + radius(k, delta);
            if (u > top) {
                top = u;
                l = k;
            }
        }
        return std::pair<int, int>{h, l};
    };
    auto [h, l] = pick(delta);
    // LUCB stopping test at the current confidence: when the challenger's
    // upper bound falls below the leader's lower bound, tighten the schedule
    // by one stage and replan at the smaller delta.
    if (emp_mean(reward_sum_, pull_count_, l) + radius(l, delta) <=
        emp_mean(reward_sum_, pull_count_, h) - radius(h, delta)) {
        ++stage_;
        delta *= alpha_;
        std::tie(h, l) = pick(delta);
    }
    queue_ = {h, l};
    queue_pos_ = 0;
}

std::optional<int> AtlucbPolicy::next_arm() {
    check_pending(pending_arm_, false);
    if (num_arms_ == 1) {
        pending_arm_ = 0;
        return pending_arm_;
    }
    if (queue_pos_ >= queue_.size()) plan_round();
    pending_arm_ = queue_[queue_pos_];
    return pending_arm_;
}

void AtlucbPolicy::observe(const Outcome& outcome) {
    check_pending(pending_arm_, true);
    reward_sum_[pending_arm_] += outcome.reward;
    ++pull_count_[pending_arm_];
    ++pulls_;
    ++queue_pos_;
    pending_arm_ = -1;
}

int AtlucbPolicy::recommend() const { return argmax_mean(reward_sum_, pull_count_); }

// --------------------------------------------------------- DoublingShPolicy

DoublingShPolicy::DoublingShPolicy(int num_arms)
    : num_arms_(num_arms), rounds_per_run_(ceil_log2(num_arms)),
      run_budget_(static_cast<std::uint64_t>(num_arms)) {
    round_sum_.assign(num_arms_, 0.0);
    round_count_.assign(num_arms_, 0);
    start_run();
}

void DoublingShPolicy::start_run() {
    survivors_.resize(num_arms_);
    for (int k = 0; k < num_arms_; ++k) survivors_[k] = k;
    round_ = 0;
    round_pos_ = 0;
    std::fill(round_sum_.begin(), round_sum_.end(), 0.0);
    std::fill(round_count_.begin(), round_count_.end(), 0);
    if (rounds_per_run_ == 0) {  // K = 1: pull the lone arm forever
        per_arm_ = std::numeric_limits<std::uint64_t>::max();
        return;
    }
    per_arm_ = run_budget_ / (survivors_.size() * static_cast<std::uint64_t>(rounds_per_run_));
}

void DoublingShPolicy::finish_round() {
    std::vector<int> order = survivors_;
    std::sort(order.begin(), order.end(), [this](int a, int b) {
        const double ma = emp_mean(round_sum_, round_count_, a);
        const double mb = emp_mean(round_sum_, round_count_, b);
        if (ma != mb) return ma > mb;
        return a < b;
    });
    order.resize((order.size() + 1) / 2);
    std::sort(order.begin(), order.end());
    survivors_ = std::move(order);
    ++round_;
    if (round_ == rounds_per_run_) {
        recommendation_ = survivors_[0];
        run_budget_ *= 2;
        start_run();
        return;
    }
    round_pos_ = 0;
    std::fill(round_sum_.begin(), round_sum_.end(), 0.0);
    std::fill(round_count_.begin(), round_count_.end(), 0);
    per_arm_ = run_budget_ / (survivors_.size() * static_cast<std::uint64_t>(rounds_per_run_));
}

std::optional<int> DoublingShPolicy::next_arm() {
    check_pending(pending_arm_, false);
    while (round_pos_ >= per_arm_ * survivors_.size()) finish_round();
    pending_arm_ = survivors_[round_pos_ % survivors_.size()];
    return pending_arm_;
}

void DoublingShPolicy::observe(const Outcome& outcome) {
    check_pending(pending_arm_, true);
    round_sum_[pending_arm_] += outcome.reward;
    ++round_count_[pending_arm_];
    ++round_pos_;
    pending_arm_ = -1;
}

int DoublingShPolicy::recommend() const { return recommendation_; }

}  // namespace baiwrc
