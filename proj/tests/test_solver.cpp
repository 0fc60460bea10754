#include <doctest.h>

#include <cmath>
#include <random>

#include "klstress/errors.hpp"
#include "klstress/oracle.hpp"
#include "klstress/solver.hpp"
#include "klstress/tilt.hpp"
#include "test_util.hpp"

using namespace klstress;
using testing::random_distribution;
using testing::uniform_on;

namespace {
const double kLambdaHalf = 1.0 / std::log(2.0);         // e^{-1/lambda} = 0.5
const double kLambdaQuarter = 1.0 / (2.0 * std::log(2.0));  // e^{-1/lambda} = 0.25
}

TEST_CASE("phi closed form and boundary cases") {
    auto d = uniform_on({0, 1});
    CHECK(phi(d, kLambdaHalf, 0.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(phi(d, kLambdaHalf, -5.0) == 0.0);
    CHECK(phi(d, kLambdaHalf, 5.0) == 0.0);
}

TEST_CASE("h closed form") {
    CHECK(h(2.0 / 3.0, kLambdaQuarter) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(h(0.0, 1.0) == 0.0);
    CHECK(h(1.0, 1.0) == 0.0);
    CHECK_THROWS_AS(h(-0.1, 1.0), InvalidInput);
    CHECK_THROWS_AS(h(1.1, 1.0), InvalidInput);
}

TEST_CASE("x_star closed form and grid-search cross-check") {
    CHECK(x_star(kLambdaQuarter) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    CHECK(x_star(1.0 / (2.0 * std::log(3.0))) == doctest::Approx(0.75).epsilon(1e-13));

    for (double lambda : {0.2, 0.4551, 0.7213, 2.0}) {
        double xs = x_star(lambda);
        CHECK(xs > 0.5);
        CHECK(xs < 1.0);
        // 1e-4 grid search of h must peak within one step of the formula.
        double best_x = 0.0, best_h = -1.0;
        for (int i = 0; i <= 10000; ++i) {
            double x = i * 1e-4;
            double hx = h(x, lambda);
            if (hx > best_h) {
                best_h = hx;
                best_x = x;
            }
        }
        CHECK(std::abs(best_x - xs) <= 2e-4);
    }
}

TEST_CASE("maximize_phi picks the atom closest to the interior optimum") {
    auto d = uniform_on({1, 2, 3});
    auto m = maximize_phi(d, kLambdaQuarter);
    CHECK(m.a_star == 2);
    CHECK(m.phi_star == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    auto single = uniform_on({7});
    CHECK(maximize_phi(single, 1.0).phi_star == 0.0);

    // lambda -> 0: phi approaches F(a) for atoms with mass above.
    auto pair = uniform_on({0, 1});
    auto m2 = maximize_phi(pair, 0.01);
    CHECK(m2.a_star == 0);
    CHECK(m2.phi_star == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("maximize_phi dominates phi at every atom") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> lambda_dist(0.05, 5.0);
    for (int rep = 0; rep < 100; ++rep) {
        auto d = random_distribution(rng, 10);
        double lambda = lambda_dist(rng);
        auto m = maximize_phi(d, lambda);
        for (double a : d.values()) {
            CHECK(m.phi_star >= phi(d, lambda, a));
        }
    }
}

TEST_CASE("solve_lambda spot value and depletion") {
    auto d = uniform_on({0, 1});
    auto sol = solve_lambda(d, 0.0, 0.0566328);
    REQUIRE(sol.lambda.has_value());
    // eps is the rounded 6-digit budget, so lambda lands within ~1e-5 of 1/ln 2.
    CHECK(*sol.lambda == doctest::Approx(1.442695).epsilon(1e-5));

    // Budget above the sup of achievable KL at this threshold.
    auto depleted = solve_lambda(d, 0.0, 0.7);
    CHECK(!depleted.lambda.has_value());
    CHECK(depleted.g_at_a == 0.0);
    CHECK(depleted.kl == doctest::Approx(std::log(2.0)).epsilon(1e-14));

    CHECK_THROWS_AS(solve_lambda(d, -5.0, 0.1), FlatThreshold);
    CHECK_THROWS_AS(solve_lambda(d, 5.0, 0.1), FlatThreshold);
    CHECK_THROWS_AS(solve_lambda(d, 0.0, 0.0), NonPositiveEps);
}

TEST_CASE("solve_lambda round trip on random budgets") {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> lambda_dist(0.05, 5.0);
    for (int rep = 0; rep < 100; ++rep) {
        auto d = random_distribution(rng, 8, 2);
        double a = d.values()[0];
        double eps = kl_of_tilt(d, {lambda_dist(rng), a});
        if (eps <= 0.0) continue;
        auto sol = solve_lambda(d, a, eps);
        REQUIRE(sol.lambda.has_value());
        CHECK(std::abs(kl_of_tilt(d, {*sol.lambda, a}) - eps) <= 1e-10);
    }
}

TEST_CASE("value_eps composes solve_lambda and phi") {
    auto d = uniform_on({0, 1});

    auto depleted = value_eps(d, std::log(2.0));
    CHECK(depleted.a_star == 0);
    CHECK(depleted.depletion);
    CHECK(depleted.value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(depleted.fsd_ok);

    auto tilted = value_eps(d, 0.0566328);
    CHECK(tilted.a_star == 0);
    REQUIRE(tilted.lambda.has_value());
    CHECK(*tilted.lambda == doctest::Approx(1.4427).epsilon(1e-4));
    CHECK(tilted.value == doctest::Approx(1.0 / 6.0).epsilon(1e-5));
    CHECK(!tilted.exceeds_half);
    CHECK(tilted.fsd_ok);
    CHECK(tilted.kl <= 0.0566328 + 1e-9);

    auto none = value_eps(d, 0.0);
    CHECK(none.value == 0.0);
    CHECK(none.kl == 0.0);
}

TEST_CASE("value_eps is monotone in eps") {
    std::mt19937_64 rng(33);
    for (int rep = 0; rep < 20; ++rep) {
        auto d = random_distribution(rng, 8, 2);
        double prev = -1.0;
        for (double eps : {0.01, 0.05, 0.2, 0.5, 1.0, 2.0}) {
            double value = value_eps(d, eps).value;
            CHECK(value >= prev - 1e-12);
            prev = value;
        }
    }
}

TEST_CASE("value_eps stays within the budget") {
    std::mt19937_64 rng(34);
    for (int rep = 0; rep < 50; ++rep) {
        auto d = random_distribution(rng, 8, 2);
        for (double eps : {0.05, 0.3, 1.0}) {
            auto report = value_eps(d, eps);
            CHECK(report.kl <= eps + 1e-9);
            CHECK(std::abs(d.cdf(report.a_star) - report.g_at_a - report.value) <= 1e-12);
            CHECK(report.exceeds_half == (report.value > 0.5));
        }
    }
}

TEST_CASE("lambda_boundary on a fine uniform discretization of [0,1]") {
    std::vector<double> grid(10000);
    for (int i = 0; i < 10000; ++i) grid[i] = i / 9999.0;
    auto d = DiscreteDistribution::from_samples(grid);
    double boundary = lambda_boundary(d);
    // Crossing for continuous F sits at 1/(2 ln 3).
    CHECK(boundary == doctest::Approx(1.0 / (2.0 * std::log(3.0))).epsilon(1e-2));
    CHECK(maximize_phi(d, boundary * 0.9).phi_star > 0.5);
    CHECK(maximize_phi(d, boundary * 1.1).phi_star < 0.5);
}

TEST_CASE("lambda_boundary raises NoBoundary on degenerate supports") {
    CHECK_THROWS_AS(lambda_boundary(uniform_on({0, 1})), NoBoundary);
    CHECK_THROWS_AS(lambda_boundary(uniform_on({5})), NoBoundary);
}

TEST_CASE("eps_crit boundary target and unreachable target") {
    auto d = uniform_on({0, 1, 2, 3});
    double crit = eps_crit(d, 0.5, 1e-6);
    CHECK(crit == doctest::Approx(0.5 * std::log(3.0)).epsilon(2e-3));

    CHECK_THROWS_AS(eps_crit(uniform_on({0, 1}), 0.75, 1e-6), TargetUnreachable);
    CHECK_THROWS_AS(eps_crit(d, 0.1, 1e-6), InvalidInput);
    CHECK_THROWS_AS(eps_crit(d, 1.0, 1e-6), InvalidInput);
    CHECK_THROWS_AS(eps_crit(d, 0.6, 0.0), InvalidInput);
}

TEST_CASE("severity_sweep rows are nonincreasing in phi_star") {
    auto d = uniform_on({1, 2, 3});
    std::vector<double> one{kLambdaQuarter};
    auto rows = severity_sweep(d, one);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].a_star == 2);
    CHECK(rows[0].phi_star == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    std::mt19937_64 rng(35);
    std::vector<double> lambdas{0.5, 1.0, 2.0};
    for (int rep = 0; rep < 20; ++rep) {
        auto random = random_distribution(rng, 8);
        auto swept = severity_sweep(random, lambdas);
        for (std::size_t i = 1; i < swept.size(); ++i) {
            CHECK(swept[i].phi_star <= swept[i - 1].phi_star + 1e-12);
        }
    }

    std::vector<double> empty;
    CHECK(severity_sweep(d, empty).empty());
    std::vector<double> unsorted{1.0, 0.5};
    CHECK_THROWS_AS(severity_sweep(d, unsorted), InvalidInput);
}

TEST_CASE("value_eps agrees with the brute-force oracle on 3-atom laws") {
    std::mt19937_64 rng(36);
    for (int rep = 0; rep < 5; ++rep) {
        auto d = random_distribution(rng, 3, 3);
        for (double eps : {0.05, 0.2, 0.5}) {
            double exact = value_eps(d, eps).value;
            double grid = brute_force_V(d, eps, 0.01);
            CHECK(std::abs(exact - grid) <= 0.02);
        }
    }
}
