#include "baiwrc/distribution.hpp"

#include <cmath>
#include <limits>

namespace baiwrc {

double DistributionSpec::mean() const {
    switch (kind) {
        case DistKind::Deterministic: return a;
        case DistKind::Bernoulli: return a;
        case DistKind::Uniform: return 0.5 * (a + b);
        case DistKind::Gaussian: return a;
    }
    return 0.0;
}

double DistributionSpec::variance() const {
    switch (kind) {
        case DistKind::Deterministic: return 0.0;
        case DistKind::Bernoulli: return a * (1.0 - a);
        case DistKind::Uniform: return (b - a) * (b - a) / 12.0;
        case DistKind::Gaussian: return b;
    }
    return 0.0;
}

double DistributionSpec::deviation_bound() const {
    switch (kind) {
        case DistKind::Deterministic: return 0.0;
        case DistKind::Bernoulli: return a < 0.5 ? 1.0 - a : a;
        case DistKind::Uniform: return 0.5 * (b - a);
        case DistKind::Gaussian: return std::numeric_limits<double>::infinity();
    }
    return 0.0;
}

double DistributionSpec::support_lo() const {
    switch (kind) {
        case DistKind::Deterministic: return a;
        case DistKind::Bernoulli: return a == 1.0 ? 1.0 : 0.0;
        case DistKind::Uniform: return a;
        case DistKind::Gaussian: return -std::numeric_limits<double>::infinity();
    }
    return 0.0;
}

double DistributionSpec::support_hi() const {
    switch (kind) {
        case DistKind::Deterministic: return a;
        case DistKind::Bernoulli: return a == 0.0 ? 0.0 : 1.0;
        case DistKind::Uniform: return b;
        case DistKind::Gaussian: return std::numeric_limits<double>::infinity();
    }
    return 0.0;
}

double DistributionSpec::sample(Rng& rng) const {
    switch (kind) {
        case DistKind::Deterministic: return a;
        case DistKind::Bernoulli: return uniform01(rng) <= a ? 1.0 : 0.0;
        case DistKind::Uniform: return a + (b - a) * uniform01(rng);
        case DistKind::Gaussian: return a + std::sqrt(b) * gaussian01(rng);
    }
    return 0.0;
}

std::string to_string(DistKind kind) {
    switch (kind) {
        case DistKind::Deterministic: return "deterministic";
        case DistKind::Bernoulli: return "bernoulli";
        case DistKind::Uniform: return "uniform";
        case DistKind::Gaussian: return "gaussian";
    }
    return "?";
}

}  // namespace baiwrc
