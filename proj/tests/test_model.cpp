#include <cmath>
#include <limits>
#include <vector>

#include <doctest.h>

#include "baiwrc/instance.hpp"
#include "baiwrc/rng.hpp"

using namespace baiwrc;

namespace {

ArmModel arm(DistributionSpec reward, std::vector<DistributionSpec> consumption,
             Coupling coupling = Coupling::Independent) {
    ArmModel a;
    a.reward = reward;
    a.consumption = std::move(consumption);
    a.coupling = coupling;
    return a;
}

// Two-arm instance used by most validation tests.
Instance basic_instance() {
    return make_instance({arm(DistributionSpec::bernoulli(0.5), {DistributionSpec::deterministic(0.5)}),
                          arm(DistributionSpec::bernoulli(0.4), {DistributionSpec::deterministic(0.5)})},
                         {2.0});
}

}  // namespace

TEST_CASE("distribution closed forms") {
    const DistributionSpec det = DistributionSpec::deterministic(0.3);
    CHECK(det.mean() == 0.3);
    CHECK(det.variance() == 0.0);
    CHECK(det.deviation_bound() == 0.0);
    CHECK(det.support_lo() == 0.3);
    CHECK(det.support_hi() == 0.3);

    const DistributionSpec bern = DistributionSpec::bernoulli(0.25);
    CHECK(bern.mean() == 0.25);
    CHECK(bern.variance() == doctest::Approx(0.1875).epsilon(1e-15));
    CHECK(bern.deviation_bound() == 0.75);  // tight bound max(p, 1-p)
    CHECK(DistributionSpec::bernoulli(0.75).deviation_bound() == 0.75);
    CHECK(bern.support_lo() == 0.0);
    CHECK(bern.support_hi() == 1.0);
    CHECK(DistributionSpec::bernoulli(0.0).support_hi() == 0.0);
    CHECK(DistributionSpec::bernoulli(1.0).support_lo() == 1.0);

    const DistributionSpec unif = DistributionSpec::uniform(0.2, 0.8);
    CHECK(unif.mean() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(unif.variance() == doctest::Approx(0.36 / 12.0).epsilon(1e-12));
    CHECK(unif.deviation_bound() == doctest::Approx(0.3).epsilon(1e-15));

    const DistributionSpec gauss = DistributionSpec::gaussian(0.1, 2.0);
    CHECK(gauss.mean() == 0.1);
    CHECK(gauss.variance() == 2.0);
    CHECK(std::isinf(gauss.deviation_bound()));
    CHECK(gauss.support_lo() == -std::numeric_limits<double>::infinity());
    CHECK(gauss.support_hi() == std::numeric_limits<double>::infinity());
}

TEST_CASE("sampling matches the distribution law") {
    Rng rng(12345);
    const int n = 1'000'000;
    const std::vector<DistributionSpec> dists = {
        DistributionSpec::deterministic(0.7),
        DistributionSpec::bernoulli(0.3),
        DistributionSpec::uniform(0.1, 0.9),
        DistributionSpec::gaussian(0.5, 0.25),
    };
    for (const DistributionSpec& d : dists) {
        double sum = 0.0, sq = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = d.sample(rng);
            sum += x;
            sq += x * x;
        }
        const double mean = sum / n;
        const double var = sq / n - mean * mean;
        const double se = std::sqrt(std::max(d.variance(), 1e-12) / n);
        CAPTURE(to_string(d.kind));
        CHECK(std::abs(mean - d.mean()) < 4.0 * se + 1e-12);
        CHECK(std::abs(var - d.variance()) < 0.01 * std::max(1.0, d.variance()));
    }
}

TEST_CASE("uniform01 stays in [0,1) and is seed-reproducible") {
    Rng a(42), b(42);
    for (int i = 0; i < 10'000; ++i) {
        const double u = uniform01(a);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(u == uniform01(b));
    }
}

TEST_CASE("shared-uniform coupling is comonotone") {
    // One uniform threshold drives reward and both consumptions, so the
    // indicator with the larger mean dominates pointwise.
    const ArmModel a = arm(DistributionSpec::bernoulli(0.7),
                           {DistributionSpec::bernoulli(0.3), DistributionSpec::bernoulli(0.5)},
                           Coupling::SharedUniform);
    Rng rng(7);
    int ones[3] = {0, 0, 0};
    for (int i = 0; i < 10'000; ++i) {
        const Outcome out = sample_outcome(a, rng);
        CHECK(out.consumption[0] <= out.consumption[1]);  // 0.3-threshold implies 0.5-threshold
        CHECK(out.consumption[1] <= out.reward);          // 0.5-threshold implies 0.7-threshold
        ones[0] += out.consumption[0] == 1.0;
        ones[1] += out.consumption[1] == 1.0;
        ones[2] += out.reward == 1.0;
    }
    // Marginals stay Bernoulli(p) despite the coupling.
    CHECK(std::abs(ones[0] / 1e4 - 0.3) < 0.02);
    CHECK(std::abs(ones[1] / 1e4 - 0.5) < 0.02);
    CHECK(std::abs(ones[2] / 1e4 - 0.7) < 0.02);
}

TEST_CASE("independent coupling draws separate variates") {
    const ArmModel a = arm(DistributionSpec::bernoulli(0.5),
                           {DistributionSpec::bernoulli(0.5), DistributionSpec::bernoulli(0.5)});
    Rng rng(11);
    int disagree = 0;
    for (int i = 0; i < 2'000; ++i) {
        const Outcome out = sample_outcome(a, rng);
        disagree += out.consumption[0] != out.consumption[1];
    }
    CHECK(disagree > 700);  // ~1000 expected under independence, 0 under coupling
}

TEST_CASE("make_instance derives the envelope") {
    const Instance q = basic_instance();
    REQUIRE(q.envelope.size() == 1);
    CHECK(q.envelope[0].b == 0.0);  // deterministic consumption deviates by 0
    CHECK(q.envelope[0].sigma2 == 0.0);
    CHECK_FALSE(q.envelope_overridden);

    const Instance s =
        make_instance({arm(DistributionSpec::bernoulli(0.5), {DistributionSpec::bernoulli(0.25)}),
                       arm(DistributionSpec::bernoulli(0.4), {DistributionSpec::bernoulli(0.5)})},
                      {2.0});
    CHECK(s.envelope[0].b == 1.0);  // Bernoulli widened to the unit bound by default
    CHECK(s.envelope[0].sigma2 == 0.25);

    InstanceOptions tight;
    tight.tight_bernoulli_b = true;
    const Instance t =
        make_instance({arm(DistributionSpec::bernoulli(0.5), {DistributionSpec::bernoulli(0.25)}),
                       arm(DistributionSpec::bernoulli(0.4), {DistributionSpec::bernoulli(0.5)})},
                      {2.0}, tight);
    CHECK(t.envelope[0].b == 0.75);  // max over arms of max(p, 1-p)
    CHECK(t.envelope[0].sigma2 == 0.25);

    // Mixed kinds: the envelope takes the worst arm per resource.
    const Instance m =
        make_instance({arm(DistributionSpec::bernoulli(0.5),
                           {DistributionSpec::uniform(0.0, 0.4), DistributionSpec::deterministic(0.2)}),
                       arm(DistributionSpec::bernoulli(0.4),
                           {DistributionSpec::deterministic(0.9), DistributionSpec::uniform(0.2, 1.0)})},
                      {5.0, 5.0});
    CHECK(m.envelope[0].b == doctest::Approx(0.2));
    CHECK(m.envelope[0].sigma2 == doctest::Approx(0.16 / 12.0));
    CHECK(m.envelope[1].b == doctest::Approx(0.4));
    CHECK(m.envelope[1].sigma2 == doctest::Approx(0.64 / 12.0));
}

TEST_CASE("validation rejections name the offending field") {
    auto reward = DistributionSpec::bernoulli(0.5);
    auto reward2 = DistributionSpec::bernoulli(0.4);
    auto det = DistributionSpec::deterministic(0.5);

    CHECK_THROWS_WITH_AS(make_instance({arm(reward, {det}), arm(reward2, {det})}, {-1.0}),
                         doctest::Contains("budgets[0]"), ValidationError);
    CHECK_THROWS_WITH_AS(make_instance({arm(DistributionSpec::bernoulli(1.5), {det}), arm(reward2, {det})}, {2.0}),
                         doctest::Contains("arms[0].reward"), ValidationError);
    CHECK_THROWS_WITH_AS(
        make_instance({arm(reward, {DistributionSpec::gaussian(0.5, 0.1)}), arm(reward2, {det})}, {2.0}),
        doctest::Contains("gaussian consumption not allowed"), ValidationError);
    CHECK_THROWS_WITH_AS(
        make_instance({arm(reward, {DistributionSpec::uniform(0.5, 1.5)}), arm(reward2, {det})}, {2.0}),
        doctest::Contains("consumption support outside [0,1]"), ValidationError);
    CHECK_THROWS_WITH_AS(
        make_instance({arm(reward, {DistributionSpec::deterministic(0.0)}), arm(reward2, {det})}, {2.0}),
        doctest::Contains("mean 0 not allowed"), ValidationError);
    CHECK_THROWS_WITH_AS(make_instance({arm(reward, {det}), arm(reward, {det})}, {2.0}),
                         doctest::Contains("unique best arm required"), ValidationError);
    CHECK_THROWS_WITH_AS(make_instance({arm(reward, {det}), arm(reward2, {det, det})}, {2.0}),
                         doctest::Contains("consumption list length"), ValidationError);

    // shared_uniform needs thresholdable (bernoulli/deterministic) components.
    CHECK_THROWS_WITH_AS(
        make_instance({arm(reward, {DistributionSpec::uniform(0.1, 0.9)}, Coupling::SharedUniform),
                       arm(reward2, {det})},
                      {2.0}),
        doctest::Contains("shared_uniform"), ValidationError);

    // Envelope override: sigma2 > b^2 and non-dominating overrides rejected.
    InstanceOptions bad;
    bad.envelope_override = std::vector<Envelope>{{0.5, 0.5}};
    CHECK_THROWS_WITH_AS(make_instance({arm(reward, {det}), arm(reward2, {det})}, {2.0}, bad),
                         doctest::Contains("exceeds b^2"), ValidationError);
    InstanceOptions weak;
    weak.envelope_override = std::vector<Envelope>{{0.1, 0.0}};
    CHECK_THROWS_WITH_AS(
        make_instance({arm(reward, {DistributionSpec::bernoulli(0.3)}), arm(reward2, {det})}, {2.0}, weak),
        doctest::Contains("does not dominate"), ValidationError);
}

TEST_CASE("budget zero is a valid (degenerate) instance") {
    const Instance q =
        make_instance({arm(DistributionSpec::bernoulli(0.5), {DistributionSpec::deterministic(0.5)}),
                       arm(DistributionSpec::bernoulli(0.4), {DistributionSpec::deterministic(0.5)})},
                      {0.0});
    CHECK(q.budgets[0] == 0.0);
}

TEST_CASE("means, best_arm, sorted_by_reward") {
    const Instance q =
        make_instance({arm(DistributionSpec::bernoulli(0.4), {DistributionSpec::deterministic(0.2)}),
                       arm(DistributionSpec::bernoulli(0.9), {DistributionSpec::deterministic(0.3)}),
                       arm(DistributionSpec::bernoulli(0.6), {DistributionSpec::deterministic(0.4)})},
                      {10.0});
    const Means m = means(q);
    CHECK(m.reward == std::vector<double>{0.4, 0.9, 0.6});
    CHECK(m.consumption[0] == std::vector<double>{0.2, 0.3, 0.4});
    CHECK(best_arm(q) == 1);

    const Instance s = sorted_by_reward(q);
    CHECK(means(s).reward == std::vector<double>{0.9, 0.6, 0.4});
    CHECK(means(s).consumption[0] == std::vector<double>{0.3, 0.4, 0.2});  // consumption follows its arm
    CHECK(s.budgets == q.budgets);
}

TEST_CASE("validate_instance accepts a round-tripped copy") {
    Instance q = basic_instance();
    CHECK_NOTHROW(validate_instance(q));
    q.envelope[0].sigma2 = 1.0;  // corrupt: sigma2 > b^2 = 0
    CHECK_THROWS_AS(validate_instance(q), ValidationError);
}

TEST_CASE("mix_seed decorrelates trials and is order-free") {
    CHECK(mix_seed(1, 0) != mix_seed(1, 1));
    CHECK(mix_seed(1, 0) != mix_seed(2, 0));
    CHECK(mix_seed(99, 7) == mix_seed(99, 7));
}
