#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "klstress/dist.hpp"
#include "klstress/tilt.hpp"

namespace klstress {

// Result of the radius-constrained optimization. lambda is empty both in
// the depletion limit (flagged) and in the degenerate eps = 0 / no-candidate
// case where the optimizer is the base law itself.
struct StressReport {
    double a_star;
    std::optional<double> lambda;
    bool depletion;
    double value;    // attained F(a*) - G(a*)
    double g_at_a;   // G(a*) under the optimizer
    double kl;       // KL actually spent
    bool exceeds_half;
    bool fsd_ok;
    double fsd_max_violation;
};

struct SweepRow {
    double lambda;
    double a_star;
    double phi_star;
    double kl;
};

// Fixed-lambda dual objective phi_lambda(a) = F(a) - G_{lambda,a}(a).
double phi(const DiscreteDistribution& d, double lambda, double a);

// h(x) = C x (1-x) / (1 - C x) with C = 1 - e^{-1/lambda}; phi as a
// function of x = F(a).
double h(double x, double lambda);

// Interior maximizer of h: x* = (1 + e^{-1/(2 lambda)})^{-1} in (1/2, 1).
double x_star(double lambda);

struct PhiMax {
    double a_star;
    double phi_star;
};

// Maximizes phi_lambda over the atoms of d; smallest atom on ties.
PhiMax maximize_phi(const DiscreteDistribution& d, double lambda);

// Outcome of calibrating lambda to a KL budget at a fixed threshold.
// Empty lambda means the budget covers the depletion limit: the optimizer
// is the conditional law above a, with g = 0 and kl = -log(1 - F(a)).
struct LambdaSolution {
    std::optional<double> lambda;
    double g_at_a;
    double kl;
};

// Unique lambda(a) with KL(Q_{lambda,a} || P) = eps, by bisection
// (KL is strictly decreasing in lambda). Requires 0 < F(a) < 1.
LambdaSolution solve_lambda(const DiscreteDistribution& d, double a, double eps);

// Radius-constrained value V_eps = max_a [F(a) - G(a)] over the KL ball.
StressReport value_eps(const DiscreteDistribution& d, double eps);

// Crossing point of the nonincreasing map lambda -> max_a phi_lambda(a)
// at level 1/2; phi exceeds 1/2 for lambda below the returned value.
// Throws NoBoundary when the lambda -> 0 limit never reaches 1/2.
double lambda_boundary(const DiscreteDistribution& d,
                       std::pair<double, double> bracket = {1e-3, 1e3});

// Smallest eps (within tol) with value_eps(d, eps).value >= p_dagger.
double eps_crit(const DiscreteDistribution& d, double p_dagger, double tol);

// One row per lambda: maximizer of phi plus the KL spent there.
std::vector<SweepRow> severity_sweep(const DiscreteDistribution& d,
                                     std::span<const double> lambdas);

}  // namespace klstress
