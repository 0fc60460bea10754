#include <doctest.h>

#include <cmath>
#include <map>

#include "klstress/errors.hpp"
#include "klstress/scenario.hpp"
#include "klstress/tilt.hpp"
#include "test_util.hpp"

using namespace klstress;
using testing::uniform_on;

namespace {
const double kLambdaHalf = 1.0 / std::log(2.0);
}

TEST_CASE("importance weights are the two region factors") {
    auto d = uniform_on({1, 2, 3, 4});
    auto t = tilt(d, {kLambdaHalf, 2.0});
    auto w = importance_weights(t);
    REQUIRE(w.size() == 4);
    CHECK(w[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(w[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(w[2] == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(w[3] == doctest::Approx(4.0 / 3.0).epsilon(1e-14));

    // Normalization identity: P-weighted mean of the weights is 1.
    double mean = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) mean += d.probs()[i] * w[i];
    CHECK(std::abs(mean - 1.0) <= 1e-12);

    auto none = tilt(d, {kLambdaHalf, 0.0});
    for (double x : importance_weights(none)) CHECK(x == 1.0);
}

TEST_CASE("reweighting reproduces tilted expectations exactly") {
    auto d = uniform_on({1, 2, 3, 4});
    auto t = tilt(d, {0.7, 2.5});
    auto w = importance_weights(t);
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        double payoff = d.values()[i] * d.values()[i];  // arbitrary statistic
        lhs += d.probs()[i] * w[i] * payoff;
        rhs += t.tilted_probs()[i] * payoff;
    }
    CHECK(std::abs(lhs - rhs) <= 1e-12);
}

TEST_CASE("sampling frequencies converge to the tilted law") {
    auto d = uniform_on({1, 2, 3, 4});
    auto t = tilt(d, {kLambdaHalf, 2.0});
    auto set = sample(t, 100000, 12345);
    REQUIRE(set.draws.size() == 100000);
    std::map<double, double> freq;
    for (double x : set.draws) freq[x] += 1e-5;
    CHECK(std::abs(freq[1] - 1.0 / 6.0) <= 0.01);
    CHECK(std::abs(freq[2] - 1.0 / 6.0) <= 0.01);
    CHECK(std::abs(freq[3] - 1.0 / 3.0) <= 0.01);
    CHECK(std::abs(freq[4] - 1.0 / 3.0) <= 0.01);
}

TEST_CASE("sample is deterministic in the seed") {
    auto d = uniform_on({1, 2, 3});
    auto t = tilt(d, {1.0, 1.5});
    auto a = sample(t, 1000, 99);
    auto b = sample(t, 1000, 99);
    CHECK(a.draws == b.draws);
    auto c = sample(t, 1000, 100);
    CHECK(a.draws != c.draws);
}

TEST_CASE("sample edge cases") {
    auto single = uniform_on({5});
    auto t = tilt(single, {1.0, 0.0});
    auto set = sample(t, 1, 0);
    CHECK(set.draws == std::vector<double>{5});
    CHECK_THROWS_AS(sample(t, 0, 0), InvalidInput);
}

TEST_CASE("sample CDF never exceeds the base CDF by more than sampling error") {
    auto d = uniform_on({1, 2, 3, 4});
    auto t = tilt(d, {kLambdaHalf, 2.0});
    auto set = sample(t, 100000, 7);
    for (std::size_t i = 0; i < d.size(); ++i) {
        double v = d.values()[i];
        double ecdf = 0.0;
        for (double x : set.draws) {
            if (x <= v) ecdf += 1.0;
        }
        ecdf /= static_cast<double>(set.draws.size());
        CHECK(ecdf <= d.cdf(v) + 0.01);
    }
}
