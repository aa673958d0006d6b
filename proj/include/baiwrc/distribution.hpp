#pragma once

#include <string>

#include "baiwrc/rng.hpp"

namespace baiwrc {

enum class DistKind { Deterministic, Bernoulli, Uniform, Gaussian };

// Tagged description of one scalar random variable (a reward or one
// consumption marginal). Means/variances are exact closed forms.
struct DistributionSpec {
    DistKind kind = DistKind::Deterministic;
    // Parameter slots by kind:
    //   Deterministic: a = value
    //   Bernoulli:     a = mean
    //   Uniform:       a = lo, b = hi
    //   Gaussian:      a = mean, b = variance
    double a = 0.0;
    double b = 0.0;

    static DistributionSpec deterministic(double value) { return {DistKind::Deterministic, value, 0.0}; }
    static DistributionSpec bernoulli(double mean) { return {DistKind::Bernoulli, mean, 0.0}; }
    static DistributionSpec uniform(double lo, double hi) { return {DistKind::Uniform, lo, hi}; }
    static DistributionSpec gaussian(double mean, double variance) { return {DistKind::Gaussian, mean, variance}; }

    double mean() const;
    double variance() const;
    // Largest almost-sure deviation from the mean; for Bernoulli this is the
    // tight max(p, 1-p) — envelope construction may widen it to 1 separately.
    double deviation_bound() const;
    // Support bounds (Gaussian is unbounded and reports +-infinity).
    double support_lo() const;
    double support_hi() const;

    double sample(Rng& rng) const;

    bool operator==(const DistributionSpec&) const = default;
};

std::string to_string(DistKind kind);

}  // namespace baiwrc
