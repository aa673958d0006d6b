#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "baiwrc/instance.hpp"

namespace baiwrc {

enum class RewardShape { OneGroup, Trap, Polynomial, Geometric };
enum class ConsumptionPattern { HmH, HmL, Mixture };
enum class ConsumptionKind { Deterministic, Uncorrelated, Correlated };

RewardShape parse_reward_shape(const std::string& name);          // onegroup|trap|polynomial|geometric
ConsumptionPattern parse_consumption_pattern(const std::string& name);  // hmh|hml|mixture
ConsumptionKind parse_consumption_kind(const std::string& name);  // deterministic|uncorrelated|correlated
std::string to_string(RewardShape shape);
std::string to_string(ConsumptionPattern pattern);
std::string to_string(ConsumptionKind kind);

// One synthetic setup: a reward shape crossed with a consumption pattern and
// a consumption kind. Mixture requires L = 2; Deterministic requires L = 1.
struct SetupSpec {
    RewardShape shape = RewardShape::OneGroup;
    ConsumptionPattern pattern = ConsumptionPattern::HmH;
    ConsumptionKind kind = ConsumptionKind::Uncorrelated;
    int K = 2;
    int L = 1;
    std::vector<double> budgets;
};

// Mean rewards of a shape: OneGroup r1=0.9, rest 0.8; Trap r1=0.9, arms
// 2..ceil(K/8) get 0.8, the rest 0.1; Polynomial r_i = 0.9(1 - sqrt(i/K));
// Geometric r_i = 0.9 * (1/9)^((i-1)/(K-1)).
std::vector<double> shape_rewards(RewardShape shape, int K);

Instance gen_synthetic(const SetupSpec& spec);

// The two-arm comparison pair: K=2, L=1, C=2, Bernoulli rewards (0.5, 0.4),
// both arms with mean consumption d — deterministic in the first instance,
// independent Bernoulli in the second.
std::pair<Instance, Instance> gen_figure1_pair(double d);

// Lower-bound family with arbitrary consumption laws. r must satisfy
// 1/2 = r_1 > r_2 >= ... >= r_K > 0 (r_2 strictly below 1/2 so every family
// member keeps a unique best arm); cons[l] lists K consumption distributions
// per resource with means descending in (0,1]. Family member i has Gaussian
// rewards N(r_k, 1) except arm i, which gets N(1 - r_i, 1); consumptions are
// identical across members, with arms 1 and 2 swapped against the sorted
// order (arm 1 <- nu_(2), arm 2 <- nu_(1), arm k <- nu_(k) for k >= 3).
std::vector<Instance> gen_theorem2_family(const std::vector<double>& r,
                                          const std::vector<std::vector<DistributionSpec>>& cons,
                                          const std::vector<double>& budgets);

// Bernoulli-consumption lower-bound family: r_1 = 1/2, r_K = 1/4, consumption
// means c*d0_(k) assigned in sorted order (no swap), Gaussian rewards with
// the same flip rule.
std::vector<Instance> gen_theorem3_family(const std::vector<double>& r, const std::vector<double>& d0,
                                          double c, const std::vector<double>& budgets);

struct Theorem3Condition {
    bool g_small = false;        // g(d_{l,k}) < 1 / ln(1/d_{l,(i)}) for all l, k
    bool flip_mass = false;      // ln(1/(1 - d_{l,(i)})) < 1/2 for all l
    bool info_budget = false;    // 128 (g(d_(1))/gap_2^2 + sum_{k>=3} g(d_(k))/gap_k^2) ln(1/d_(i)) < 1
    bool budget_floor = false;   // C_l > ln 64 for all l
    bool log_scale = false;      // ln(1/d_{l,(i)}) > 1 for all l
    bool all() const { return g_small && flip_mass && info_budget && budget_floor && log_scale; }
};

// Checks the five scale-threshold inequalities for flip index i (1-based,
// i >= 2) at the given scale c; reported, never solved for.
Theorem3Condition theorem3_condition(const std::vector<double>& r, const std::vector<double>& d0,
                                     double c, const std::vector<double>& budgets,
                                     const std::function<double(double)>& g, int i);

// Counterexample family for the refined complexity measures: L=1,
// deterministic consumptions d_1 = 2^(2-K), d_k = 2^(k-K), Bernoulli rewards
// r_1 = 1/2, r_k = 1/2 - 2^((k-K-4)/2), flip rule for member i.
std::vector<Instance> gen_appendix_b5_family(int K, double budget);

}  // namespace baiwrc
