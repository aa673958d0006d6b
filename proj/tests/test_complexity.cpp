#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "baiwrc/complexity.hpp"
#include "baiwrc/instance.hpp"
#include "baiwrc/rng.hpp"

using namespace baiwrc;

namespace {

ArmModel arm(double reward_mean, std::vector<DistributionSpec> consumption) {
    ArmModel a;
    a.reward = DistributionSpec::bernoulli(reward_mean);
    a.consumption = std::move(consumption);
    return a;
}

Instance det_instance(const std::vector<double>& rewards, const std::vector<double>& consumptions,
                      double budget) {
    std::vector<ArmModel> arms;
    for (std::size_t k = 0; k < rewards.size(); ++k)
        arms.push_back(arm(rewards[k], {DistributionSpec::deterministic(consumptions[k])}));
    return make_instance(std::move(arms), {budget});
}

// Random deterministic-consumption instance with distinct rewards.
Instance random_det_instance(Rng& rng) {
    const int K = 2 + static_cast<int>(rng() % 15);
    std::vector<double> r(K), d(K);
    for (int k = 0; k < K; ++k) {
        r[k] = 0.05 + 0.9 * uniform01(rng);
        d[k] = 0.05 + 0.9 * uniform01(rng);
    }
    std::sort(r.begin(), r.end(), std::greater<double>());
    r[0] = std::min(1.0, r[1] + 0.05 + 0.2 * uniform01(rng));  // unique best arm with a real gap
    return det_instance(r, d, 1.0 + 100.0 * uniform01(rng));
}

// Brute-force H2: max over k of (sum of k largest consumptions)/gap_k^2.
double oracle_h2_det(std::vector<double> r, std::vector<double> d) {
    std::sort(r.begin(), r.end(), std::greater<double>());
    std::sort(d.begin(), d.end(), std::greater<double>());
    double best = 0.0, prefix = d[0];
    for (std::size_t k = 1; k < d.size(); ++k) {
        prefix += d[k];
        best = std::max(best, prefix / ((r[0] - r[k]) * (r[0] - r[k])));
    }
    return best;
}

}  // namespace

TEST_CASE("ceil_log2 is exact over integers") {
    CHECK(ceil_log2(1) == 0);
    CHECK(ceil_log2(2) == 1);
    CHECK(ceil_log2(3) == 2);
    CHECK(ceil_log2(4) == 2);
    CHECK(ceil_log2(5) == 3);
    CHECK(ceil_log2(8) == 3);
    CHECK(ceil_log2(9) == 4);
    CHECK(ceil_log2(16) == 4);
    CHECK(ceil_log2(17) == 5);
    CHECK(ceil_log2(64) == 6);
    CHECK(ceil_log2(256) == 8);
    CHECK_THROWS_AS(ceil_log2(0), std::invalid_argument);
}

TEST_CASE("effective consumption measure") {
    CHECK(effective_consumption(0.3, 0.0, 0.7) == 0.7);  // deterministic limit returns d exactly
    CHECK(effective_consumption(0.0, 0.0, 0.42) == 0.42);
    CHECK(effective_consumption(1.0, 1.0, 0.5) ==
          doctest::Approx(2.9853397382384474).epsilon(1e-14));  // 4/ln 5 + 1/2
    // Scale-free form: b = d, sigma^2 = d^2/3 gives (4/ln 13 + 1) * d.
    for (const double d : {0.1, 0.37, 0.9})
        CHECK(effective_consumption(d, d * d / 3.0, d) ==
              doctest::Approx(2.55948498100512 * d).epsilon(1e-14));

    CHECK_THROWS_AS(effective_consumption(1.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(effective_consumption(1.0, 1.0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(effective_consumption(0.5, 0.26, 0.1), std::invalid_argument);  // sigma2 > b^2
    CHECK_THROWS_AS(effective_consumption(-1.0, 0.0, 0.1), std::invalid_argument);
}

TEST_CASE("f is nondecreasing in sigma2") {
    for (const double b : {0.5, 1.0, 2.0}) {
        double prev = 0.0;
        for (double s2 = 1e-6; s2 <= b * b; s2 *= 4.0) {
            const double f = effective_consumption(b, s2, 0.3);
            CHECK(f >= prev);
            prev = f;
        }
    }
}

TEST_CASE("Bernoulli blow-up: f/d diverges as d shrinks") {
    for (const double d : {1e-4, 1e-5, 1e-6})
        CHECK(effective_consumption(1.0, d * (1.0 - d), d) / d > 10.0);
    // ... while the deterministic ratio stays 1.
    CHECK(effective_consumption(0.0, 0.0, 1e-6) / 1e-6 == 1.0);
}

TEST_CASE("H2/H1 worked examples") {
    const Instance two = det_instance({0.5, 0.4}, {0.5, 0.5}, 2.0);
    CHECK(h2_det(two)[0] == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(h2_sto(two)[0] == doctest::Approx(100.0).epsilon(1e-12));  // zero envelope
    CHECK(h1_det(two)[0] == doctest::Approx(100.0).epsilon(1e-12));

    const Instance three = det_instance({0.9, 0.8, 0.6}, {0.2, 0.9, 0.1}, 10.0);
    // sorted d = (0.9, 0.2, 0.1); max{(0.9+0.2)/0.01, 1.2/0.09} = 110
    CHECK(h2_det(three)[0] == doctest::Approx(110.0).epsilon(1e-12));
    // 0.9/0.01 + 0.2/0.01 + 0.1/0.09
    CHECK(h1_det(three)[0] == doctest::Approx(111.11111111111111).epsilon(1e-12));

    const std::vector<double> gaps = reward_gaps(three);
    CHECK(gaps[0] == doctest::Approx(0.1));
    CHECK(gaps[1] == doctest::Approx(0.1));
    CHECK(gaps[2] == doctest::Approx(0.3));
}

TEST_CASE("unit consumption reduces H2 to the fixed-budget form") {
    const Instance q = det_instance({0.9, 0.7, 0.6, 0.5}, {1.0, 1.0, 1.0, 1.0}, 40.0);
    // max_k k/gap_k^2 = max{2/0.04, 3/0.09, 4/0.16} = 50
    CHECK(h2_det(q)[0] == doctest::Approx(50.0).epsilon(1e-12));
}

TEST_CASE("refined measures use arm-index order and reject unsorted input") {
    const Instance three = det_instance({0.9, 0.8, 0.6}, {0.2, 0.9, 0.1}, 10.0);
    const RefinedH ref = refined_h(three);  // already reward-sorted
    // prefix sums in index order: max{(0.2+0.9)/0.01, 1.2/0.09} = 110;
    // H~1 = 0.2/0.01 + 0.9/0.01 + 0.1/0.09
    CHECK(ref.h2[0] == doctest::Approx(110.0).epsilon(1e-12));
    CHECK(ref.h1[0] == doctest::Approx(111.11111111111111).epsilon(1e-12));

    const Instance unsorted = det_instance({0.8, 0.9}, {0.5, 0.5}, 2.0);
    CHECK_THROWS_AS(refined_h(unsorted), std::invalid_argument);

    // Favorable pairing strictly below the worst-case measures.
    const Instance favorable = det_instance({0.9, 0.8, 0.6}, {0.1, 0.2, 0.9}, 10.0);
    const RefinedH fav = refined_h(favorable);
    CHECK(fav.h2[0] < h2_det(favorable)[0]);
    CHECK(fav.h1[0] < h1_det(favorable)[0]);
}

TEST_CASE("tilde H2 with a caller-supplied g") {
    const Instance q = det_instance({0.5, 0.4}, {0.04, 0.04}, 2.0);
    const auto sqrt_g = [](double d) { return std::sqrt(d); };
    CHECK(tilde_h2_sto(q, sqrt_g)[0] == doctest::Approx(40.0).epsilon(1e-12));  // (0.2+0.2)/0.01
    CHECK(tilde_h2_sto(q, [](double) { return 0.0; })[0] == 0.0);

    Rng rng(5);
    for (int i = 0; i < 50; ++i) {
        const Instance r = random_det_instance(rng);
        CHECK(tilde_h2_sto(r, [](double d) { return d; })[0] ==
              doctest::Approx(h2_det(r)[0]).epsilon(1e-12));  // g = identity
    }
}

TEST_CASE("gamma and bound values") {
    // gap 0.5, det d = 0.5 -> H2 = (0.5+0.5)/0.25 = 4; C = 160 -> gamma = 40.
    const Instance q = det_instance({0.9, 0.4}, {0.5, 0.5}, 160.0);
    const GammaPair g = gamma(q);
    CHECK(g.det == doctest::Approx(40.0).epsilon(1e-12));
    CHECK(g.sto == doctest::Approx(40.0).epsilon(1e-12));

    const UpperBounds ub = upper_bound_value(q);
    CHECK(ub.general == doctest::Approx(0.00018159971904993942).epsilon(1e-12));  // 4 e^{-10}
    CHECK(ub.det == doctest::Approx(9.079985952496971e-05).epsilon(1e-12));       // 2 e^{-10}

    // Multi-resource: the smaller budget/H2 ratio binds.
    std::vector<ArmModel> arms = {
        arm(0.9, {DistributionSpec::deterministic(0.5), DistributionSpec::deterministic(0.5)}),
        arm(0.4, {DistributionSpec::deterministic(0.5), DistributionSpec::deterministic(0.5)})};
    const Instance two = make_instance(std::move(arms), {100.0, 300.0});
    CHECK(gamma(two).det == doctest::Approx(100.0 / 4.0).epsilon(1e-12));
}

TEST_CASE("lower bound value and budget condition") {
    // gamma_det = 0.01: H2 = 4, C = 0.04.
    const Instance q = det_instance({0.9, 0.4}, {0.5, 0.5}, 0.04);
    const LowerBound lb = lower_bound_value_det(q);
    CHECK(lb.value == doctest::Approx(0.05659925427415652).epsilon(1e-12));  // (1/6) e^{-1.08}
    CHECK(lb.condition_ok);  // 192 * 0.01 = 1.92 >= 1

    const Instance tiny = det_instance({0.9, 0.4}, {0.5, 0.5}, 0.01);  // gamma_det = 0.0025
    CHECK_FALSE(lower_bound_value_det(tiny).condition_ok);
    CHECK(lower_bound_value_det(det_instance({0.9, 0.4}, {0.5, 0.5}, 0.4)).value <
          lb.value);  // monotone in C
}

TEST_CASE("K=1 rejected by complexity measures") {
    const Instance solo =
        make_instance({arm(0.5, {DistributionSpec::deterministic(0.5)})}, {2.0});
    CHECK_THROWS_AS(h2_det(solo), std::invalid_argument);
    CHECK_THROWS_AS(upper_bound_value(solo), std::invalid_argument);
}

TEST_CASE("zero-envelope reduction and ordering over random instances") {
    Rng rng(2024);
    for (int i = 0; i < 1000; ++i) {
        const Instance q = random_det_instance(rng);
        const double sto = h2_sto(q)[0];
        const double det = h2_det(q)[0];
        CHECK(std::abs(sto - det) <= 1e-12 * det);

        const double h1 = h1_det(q)[0];
        const RefinedH ref = refined_h(sorted_by_reward(q));
        const double slack = 1e-9 * h1;
        CHECK(ref.h2[0] <= det + slack);
        CHECK(det <= h1 + slack);
        CHECK(ref.h1[0] <= h1 + slack);
        CHECK(ref.h2[0] <= ref.h1[0] + slack);
        CHECK(h2_det(q)[0] == doctest::Approx(oracle_h2_det(means(q).reward, means(q).consumption[0]))
                                  .epsilon(1e-12));
    }
}

TEST_CASE("scale covariance of the deterministic measures") {
    Rng rng(77);
    for (int i = 0; i < 100; ++i) {
        Instance q = random_det_instance(rng);
        const double c = 0.125;  // power of two: scaling is exact in binary floating point
        Instance scaled = q;
        for (ArmModel& a : scaled.arms) a.consumption[0].a *= c;
        scaled.budgets[0] *= c;
        CHECK(h2_det(scaled)[0] == doctest::Approx(c * h2_det(q)[0]).epsilon(1e-14));
        CHECK(gamma(scaled).det == doctest::Approx(gamma(q).det).epsilon(1e-14));
    }
}

TEST_CASE("complexity_report mirrors the individual measures") {
    const Instance q = det_instance({0.9, 0.8, 0.6}, {0.2, 0.9, 0.1}, 10.0);
    const ComplexityReport rep = complexity_report(q);
    CHECK(rep.h2_det == h2_det(q));
    CHECK(rep.h2_sto == h2_sto(q));
    CHECK(rep.h1_det == h1_det(q));
    CHECK(rep.gaps == reward_gaps(q));
    CHECK(rep.gamma == gamma(q).sto);
    CHECK(rep.gamma_det == gamma(q).det);
    CHECK(rep.upper_bound_general == upper_bound_value(q).general);
    CHECK(rep.f_per_rank[0] == std::vector<double>{0.9, 0.2, 0.1});  // zero envelope: f = d, sorted
    const RefinedH ref = refined_h(sorted_by_reward(q));
    CHECK(rep.h2_refined == ref.h2);
    CHECK(rep.h1_refined == ref.h1);
}
