#pragma once

#include <functional>
#include <vector>

#include "baiwrc/instance.hpp"

namespace baiwrc {

// Exact integer ceil(log2(k)); k >= 1.
int ceil_log2(int k);

// Effective consumption measure f(b, sigma, d) = 4b / ln(4b^2/sigma2 + 1) + d
// (natural log). sigma2 = 0 (including b = 0) returns d, the deterministic
// limit. Requires sigma2 <= b^2 and d > 0.
double effective_consumption(double b, double sigma2, double d);

// Reward gaps on the reward-sorted order: gaps[k] = r_(1) - r_(k+1) for the
// 0-based rank k, with gaps[0] = gaps[1] = r_(1) - r_(2).
std::vector<double> reward_gaps(const Instance& instance);

// max over k in {2..K} of (sum of the k largest f-values) / gap_k^2, per
// resource, with f evaluated at the instance envelope.
std::vector<double> h2_sto(const Instance& instance);

// Same with the raw mean consumptions in place of f.
std::vector<double> h2_det(const Instance& instance);

// Full sum over ranks of d_(k) / gap_k^2, per resource.
std::vector<double> h1_det(const Instance& instance);

struct RefinedH {
    std::vector<double> h1;  // per resource
    std::vector<double> h2;  // per resource
};

// Refined measures that keep consumptions in arm-index order instead of the
// worst-case descending order. Requires arms already sorted by mean reward
// descending (rejects unsorted input); use sorted_by_reward() to relabel.
RefinedH refined_h(const Instance& instance);

// max over k of (sum over the k largest consumptions of g(d)) / gap_k^2.
// g must be increasing with g(0) = 0 (caller's responsibility).
std::vector<double> tilde_h2_sto(const Instance& instance,
                                 const std::function<double(double)>& g);

struct GammaPair {
    double sto = 0.0;
    double det = 0.0;
};

// gamma = min over resources of C_l / H2_l, for the stochastic and
// deterministic complexity terms respectively.
GammaPair gamma(const Instance& instance);

struct UpperBounds {
    double general = 0.0;  // 2 L K log2(K) exp(-gamma / (4 ceil(log2 K)))
    double det = 0.0;      // K log2(K) exp(-gamma_det / (4 ceil(log2 K)))
};

// Failure-probability upper bound values; not clamped to 1.
UpperBounds upper_bound_value(const Instance& instance);

struct LowerBound {
    double value = 0.0;     // (1/6) exp(-108 gamma_det)
    bool condition_ok = false;  // 96 * 2 * gamma_det >= 1
};

// Lower-bound value for an instance from the general-consumption lower-bound
// family, plus whether the budget condition holds for this instance.
LowerBound lower_bound_value_det(const Instance& instance);

struct ComplexityReport {
    std::vector<std::vector<double>> f_per_rank;  // [resource][rank]
    std::vector<double> h2_sto;
    std::vector<double> h2_det;
    std::vector<double> h1_det;
    std::vector<double> h1_refined;
    std::vector<double> h2_refined;
    std::vector<double> gaps;
    double gamma = 0.0;
    double gamma_det = 0.0;
    double upper_bound_general = 0.0;
    double upper_bound_det = 0.0;
};

// Evaluates every measure on one instance. The refined measures are computed
// on the reward-sorted relabelling (they are defined on that ordering).
ComplexityReport complexity_report(const Instance& instance);

}  // namespace baiwrc
