#include "klstress/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "klstress/dominance.hpp"
#include "klstress/errors.hpp"

namespace klstress {

namespace {

constexpr double kKlTol = 1e-10;
constexpr int kMaxBisectIters = 200;

double exp_neg_inv(double lambda) { return std::exp(-1.0 / lambda); }

void require_positive_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw InvalidInput("solver: lambda must be positive and finite");
    }
}

// Largest F(a) over atoms that still have mass strictly above them; this is
// the eps -> infinity value of the robust problem (full depletion).
double depletion_cap_value(const DiscreteDistribution& d) {
    double best = 0.0;
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
        best = std::max(best, d.cdf_at(i));
    }
    return best;
}

StressReport baseline_report(const DiscreteDistribution& d) {
    double a0 = d.values().front();
    return StressReport{
        .a_star = a0,
        .lambda = std::nullopt,
        .depletion = false,
        .value = 0.0,
        .g_at_a = d.cdf_at(0),
        .kl = 0.0,
        .exceeds_half = false,
        .fsd_ok = true,
        .fsd_max_violation = 0.0,
    };
}

}  // namespace

double phi(const DiscreteDistribution& d, double lambda, double a) {
    require_positive_lambda(lambda);
    return closed_form::phi(d.cdf(a), exp_neg_inv(lambda));
}

double h(double x, double lambda) {
    require_positive_lambda(lambda);
    if (!(x >= 0.0) || !(x <= 1.0)) {
        throw InvalidInput("h: x must lie in [0,1]");
    }
    if (x == 0.0 || x == 1.0) return 0.0;
    double C = -std::expm1(-1.0 / lambda);
    return C * x * (1.0 - x) / (1.0 - C * x);
}

double x_star(double lambda) {
    require_positive_lambda(lambda);
    return 1.0 / (1.0 + std::exp(-1.0 / (2.0 * lambda)));
}

PhiMax maximize_phi(const DiscreteDistribution& d, double lambda) {
    require_positive_lambda(lambda);
    double q = exp_neg_inv(lambda);
    double best_phi = -1.0;
    double best_a = d.values().front();
    for (std::size_t i = 0; i < d.size(); ++i) {
        double value = closed_form::phi(d.cdf_at(i), q);
        if (value > best_phi) {
            best_phi = value;
            best_a = d.values()[i];
        }
    }
    return {best_a, best_phi};
}

LambdaSolution solve_lambda(const DiscreteDistribution& d, double a, double eps) {
    if (!(eps > 0.0)) {
        throw NonPositiveEps("solve_lambda: eps must be positive");
    }
    double F = d.cdf(a);
    if (F == 0.0 || F == 1.0) {
        throw FlatThreshold("solve_lambda: F(a) in {0,1}, tilt has no effect");
    }
    double cap = -std::log1p(-F);  // sup of achievable KL at this threshold
    if (eps >= cap) {
        return {std::nullopt, 0.0, cap};
    }
    auto kl_at = [&](double lambda) { return closed_form::kl(F, exp_neg_inv(lambda)); };

    // KL is strictly decreasing in lambda: expand until kl(lo) >= eps >= kl(hi).
    double lo = 1e-3, hi = 1e3;
    while (kl_at(lo) < eps && lo > 1e-6) lo *= 0.1;
    while (kl_at(hi) > eps && hi < 1e6) hi *= 10.0;
    if (kl_at(lo) < eps || kl_at(hi) > eps) {
        throw Error("solve_lambda: bracket expansion failed");
    }
    double mid = lo;
    for (int iter = 0; iter < kMaxBisectIters; ++iter) {
        mid = 0.5 * (lo + hi);
        double kl = kl_at(mid);
        if (std::abs(kl - eps) <= kKlTol) break;
        if (kl > eps) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    double q = exp_neg_inv(mid);
    return {mid, closed_form::g_at_a(F, q), closed_form::kl(F, q)};
}

StressReport value_eps(const DiscreteDistribution& d, double eps) {
    if (!(eps >= 0.0)) {
        throw InvalidInput("value_eps: eps must be nonnegative");
    }
    if (eps == 0.0 || d.size() == 1) {
        return baseline_report(d);
    }

    bool found = false;
    double best_value = 0.0;
    StressReport best = baseline_report(d);
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {  // atoms with 0 < F(a) < 1
        double a = d.values()[i];
        LambdaSolution sol = solve_lambda(d, a, eps);
        double F = d.cdf_at(i);
        double value = F - sol.g_at_a;
        if (!found || value > best_value) {
            found = true;
            best_value = value;
            best = StressReport{
                .a_star = a,
                .lambda = sol.lambda,
                .depletion = !sol.lambda.has_value(),
                .value = value,
                .g_at_a = sol.g_at_a,
                .kl = sol.kl,
                .exceeds_half = value > 0.5,
                .fsd_ok = true,
                .fsd_max_violation = 0.0,
            };
        }
    }
    if (!found) return baseline_report(d);

    // Dominance of the chosen optimizer over the base.
    FsdResult fsd{true, 0.0};
    if (best.depletion) {
        double tail = 1.0 - d.cdf(best.a_star);
        std::vector<double> probs(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            probs[i] = d.values()[i] > best.a_star ? d.probs()[i] / tail : 0.0;
        }
        fsd = check_fsd_probs(d, probs);
    } else {
        fsd = check_fsd(d, tilt(d, {*best.lambda, best.a_star}));
    }
    best.fsd_ok = fsd.ok;
    best.fsd_max_violation = fsd.max_violation;
    return best;
}

double lambda_boundary(const DiscreteDistribution& d,
                       std::pair<double, double> bracket) {
    if (!(bracket.first > 0.0) || !(bracket.second > bracket.first)) {
        throw InvalidInput("lambda_boundary: bracket must satisfy 0 < lo < hi");
    }
    // As lambda -> 0, max_a phi tends to max F(a) over atoms with mass above;
    // if that never exceeds 1/2 no crossing exists.
    if (depletion_cap_value(d) <= 0.5) {
        throw NoBoundary("lambda_boundary: max_a phi never exceeds 1/2");
    }
    auto max_phi = [&](double lambda) { return maximize_phi(d, lambda).phi_star; };

    double lo = bracket.first, hi = bracket.second;
    while (max_phi(lo) <= 0.5 && lo > 1e-8) lo *= 0.1;
    while (max_phi(hi) > 0.5 && hi < 1e6) hi *= 10.0;
    if (max_phi(lo) <= 0.5) {
        throw NoBoundary("lambda_boundary: no lambda in bracket pushes max phi above 1/2");
    }
    double mid = lo;
    for (int iter = 0; iter < kMaxBisectIters; ++iter) {
        mid = 0.5 * (lo + hi);
        double value = max_phi(mid);
        if (std::abs(value - 0.5) <= 1e-8) break;
        if (value > 0.5) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return mid;
}

double eps_crit(const DiscreteDistribution& d, double p_dagger, double tol) {
    if (!(p_dagger >= 0.5) || !(p_dagger < 1.0)) {
        throw InvalidInput("eps_crit: target must lie in [0.5, 1)");
    }
    if (!(tol > 0.0)) {
        throw InvalidInput("eps_crit: tol must be positive");
    }
    if (p_dagger > depletion_cap_value(d)) {
        throw TargetUnreachable("eps_crit: target exceeds the full-depletion value");
    }
    // Upper bracket: cheapest full depletion among atoms already at or above
    // the target level.
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
        double F = d.cdf_at(i);
        if (F >= p_dagger) hi = std::min(hi, -std::log1p(-F));
    }
    double lo = 0.0;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (value_eps(d, mid).value >= p_dagger) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

std::vector<SweepRow> severity_sweep(const DiscreteDistribution& d,
                                     std::span<const double> lambdas) {
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (!(lambdas[i] > 0.0)) {
            throw InvalidInput("severity_sweep: lambdas must be positive");
        }
        if (i > 0 && !(lambdas[i] > lambdas[i - 1])) {
            throw InvalidInput("severity_sweep: lambdas must be strictly increasing");
        }
    }
    std::vector<SweepRow> rows;
    rows.reserve(lambdas.size());
    for (double lambda : lambdas) {
        PhiMax m = maximize_phi(d, lambda);
        double kl = closed_form::kl(d.cdf(m.a_star), exp_neg_inv(lambda));
        rows.push_back({lambda, m.a_star, m.phi_star, kl});
    }
    return rows;
}

}  // namespace klstress
