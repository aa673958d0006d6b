#include "baiwrc/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace baiwrc {

namespace {

void require_k2(const Instance& inst) {
    if (inst.num_arms() < 2) throw std::invalid_argument("complexity measures require K >= 2");
}

// Mean consumptions of one resource sorted descending.
std::vector<double> sorted_consumption(const Instance& inst, int l) {
    std::vector<double> d(inst.arms.size());
    for (std::size_t k = 0; k < inst.arms.size(); ++k) d[k] = inst.arms[k].consumption[l].mean();
    std::stable_sort(d.begin(), d.end(), std::greater<double>());
    return d;
}

// max over k in {2..K} of prefix_sum(values, k) / gaps[k-1]^2, with values
// already in the order the measure prescribes.
double max_prefix_over_gap(const std::vector<double>& values, const std::vector<double>& gaps) {
    double best = 0.0;
    double prefix = values[0];
    for (std::size_t k = 1; k < values.size(); ++k) {
        prefix += values[k];
        best = std::max(best, prefix / (gaps[k] * gaps[k]));
    }
    return best;
}

}  // namespace

int ceil_log2(int k) {
    if (k < 1) throw std::invalid_argument("ceil_log2 requires k >= 1");
    int m = 0;
    while ((1 << m) < k) ++m;
    return m;
}

double effective_consumption(double b, double sigma2, double d) {
    if (b < 0.0 || sigma2 < 0.0) throw std::invalid_argument("effective_consumption: negative envelope parameter");
    if (sigma2 > b * b) throw std::invalid_argument("effective_consumption: sigma2 exceeds b^2");
    if (!(d > 0.0)) throw std::invalid_argument("effective_consumption: d must be positive");
    if (sigma2 == 0.0) return d;
    return 4.0 * b / std::log(4.0 * b * b / sigma2 + 1.0) + d;
}

std::vector<double> reward_gaps(const Instance& inst) {
    require_k2(inst);
    std::vector<double> r(inst.arms.size());
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = inst.arms[k].reward.mean();
    std::sort(r.begin(), r.end(), std::greater<double>());
    std::vector<double> gaps(r.size());
    for (std::size_t k = 1; k < r.size(); ++k) gaps[k] = r[0] - r[k];
    gaps[0] = gaps[1];
    return gaps;
}

std::vector<double> h2_sto(const Instance& inst) {
    require_k2(inst);
    const std::vector<double> gaps = reward_gaps(inst);
    std::vector<double> out(inst.budgets.size());
    for (int l = 0; l < inst.num_resources(); ++l) {
        std::vector<double> d = sorted_consumption(inst, l);
        const Envelope& env = inst.envelope[l];
        for (double& v : d) v = effective_consumption(env.b, env.sigma2, v);
        out[l] = max_prefix_over_gap(d, gaps);
    }
    return out;
}

std::vector<double> h2_det(const Instance& inst) {
    require_k2(inst);
    const std::vector<double> gaps = reward_gaps(inst);
    std::vector<double> out(inst.budgets.size());
    for (int l = 0; l < inst.num_resources(); ++l)
        out[l] = max_prefix_over_gap(sorted_consumption(inst, l), gaps);
    return out;
}

std::vector<double> h1_det(const Instance& inst) {
    require_k2(inst);
    const std::vector<double> gaps = reward_gaps(inst);
    std::vector<double> out(inst.budgets.size());
    for (int l = 0; l < inst.num_resources(); ++l) {
        const std::vector<double> d = sorted_consumption(inst, l);
        double sum = 0.0;
        for (std::size_t k = 0; k < d.size(); ++k) sum += d[k] / (gaps[k] * gaps[k]);
        out[l] = sum;
    }
    return out;
}

RefinedH refined_h(const Instance& inst) {
    require_k2(inst);
    for (std::size_t k = 1; k < inst.arms.size(); ++k)
        if (inst.arms[k - 1].reward.mean() < inst.arms[k].reward.mean())
            throw std::invalid_argument("refined_h requires arms sorted by mean reward descending");
    const std::vector<double> gaps = reward_gaps(inst);
    RefinedH out;
    out.h1.resize(inst.budgets.size());
    out.h2.resize(inst.budgets.size());
    for (int l = 0; l < inst.num_resources(); ++l) {
        std::vector<double> d(inst.arms.size());
        for (std::size_t k = 0; k < d.size(); ++k) d[k] = inst.arms[k].consumption[l].mean();
        double sum = 0.0;
        for (std::size_t k = 0; k < d.size(); ++k) sum += d[k] / (gaps[k] * gaps[k]);
        out.h1[l] = sum;
        out.h2[l] = max_prefix_over_gap(d, gaps);
    }
    return out;
}

std::vector<double> tilde_h2_sto(const Instance& inst, const std::function<double(double)>& g) {
    require_k2(inst);
    const std::vector<double> gaps = reward_gaps(inst);
    std::vector<double> out(inst.budgets.size());
    for (int l = 0; l < inst.num_resources(); ++l) {
        std::vector<double> d = sorted_consumption(inst, l);
        for (double& v : d) v = g(v);
        out[l] = max_prefix_over_gap(d, gaps);
    }
    return out;
}

GammaPair gamma(const Instance& inst) {
    const std::vector<double> sto = h2_sto(inst);
    const std::vector<double> det = h2_det(inst);
    GammaPair out{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    for (int l = 0; l < inst.num_resources(); ++l) {
        out.sto = std::min(out.sto, inst.budgets[l] / sto[l]);
        out.det = std::min(out.det, inst.budgets[l] / det[l]);
    }
    return out;
}

UpperBounds upper_bound_value(const Instance& inst) {
    require_k2(inst);
    const int K = inst.num_arms();
    const int L = inst.num_resources();
    const GammaPair g = gamma(inst);
    const double phases = static_cast<double>(ceil_log2(K));
    const double log2K = std::log2(static_cast<double>(K));
    UpperBounds out;
    out.general = 2.0 * L * K * log2K * std::exp(-g.sto / (4.0 * phases));
    out.det = K * log2K * std::exp(-g.det / (4.0 * phases));
    return out;
}

LowerBound lower_bound_value_det(const Instance& inst) {
    const double gd = gamma(inst).det;
    LowerBound out;
    out.value = std::exp(-108.0 * gd) / 6.0;
    out.condition_ok = 96.0 * 2.0 * gd >= 1.0;
    return out;
}

ComplexityReport complexity_report(const Instance& inst) {
    require_k2(inst);
    ComplexityReport rep;
    rep.gaps = reward_gaps(inst);
    rep.f_per_rank.resize(inst.budgets.size());
    for (int l = 0; l < inst.num_resources(); ++l) {
        std::vector<double> d = sorted_consumption(inst, l);
        const Envelope& env = inst.envelope[l];
        for (double& v : d) v = effective_consumption(env.b, env.sigma2, v);
        rep.f_per_rank[l] = std::move(d);
    }
    rep.h2_sto = h2_sto(inst);
    rep.h2_det = h2_det(inst);
    rep.h1_det = h1_det(inst);
    const RefinedH refined = refined_h(sorted_by_reward(inst));
    rep.h1_refined = refined.h1;
    rep.h2_refined = refined.h2;
    const GammaPair g = gamma(inst);
    rep.gamma = g.sto;
    rep.gamma_det = g.det;
    const UpperBounds ub = upper_bound_value(inst);
    rep.upper_bound_general = ub.general;
    rep.upper_bound_det = ub.det;
    return rep;
}

}  // namespace baiwrc
