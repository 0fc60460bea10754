#include "klstress/tilt.hpp"

#include <cmath>

#include "klstress/errors.hpp"

namespace klstress {

namespace {

void validate(const TiltParams& params) {
    if (!(params.lambda > 0.0) || !std::isfinite(params.lambda)) {
        throw InvalidInput("tilt: lambda must be positive and finite");
    }
    if (!std::isfinite(params.a)) {
        throw InvalidInput("tilt: threshold a must be finite");
    }
}

double exp_neg_inv(double lambda) { return std::exp(-1.0 / lambda); }

}  // namespace

namespace closed_form {

// Algebraically 1 - (1-q)F; this form avoids cancellation when F is near 1
// and q is tiny (Z = q exactly at F = 1).
double z(double F, double q) { return (1.0 - F) + q * F; }

double g_at_a(double F, double q) {
    if (F == 0.0) return 0.0;
    return q * F / z(F, q);
}

double kl(double F, double q) {
    double g = g_at_a(F, q);
    // g log q with the 0 * log 0 := 0 convention (depletion endpoint q = 0).
    double tilt_term = (g == 0.0) ? 0.0 : g * std::log(q);
    double kl_value = -std::log(z(F, q)) + tilt_term;
    return kl_value < 0.0 ? 0.0 : kl_value;
}

double phi(double F, double q) {
    if (F == 0.0 || F == 1.0) return 0.0;
    return F * (1.0 - F) * (1.0 - q) / z(F, q);
}

}  // namespace closed_form

double normalizer(const DiscreteDistribution& d, TiltParams params) {
    validate(params);
    return closed_form::z(d.cdf(params.a), exp_neg_inv(params.lambda));
}

TiltedMeasure tilt(const DiscreteDistribution& d, TiltParams params) {
    validate(params);
    double F = d.cdf(params.a);
    double q = exp_neg_inv(params.lambda);
    if (q == 0.0 && F > 0.0) {  // Z degenerates; includes the F(a) = 1 case
        throw DepletionUnderflow(
            "tilt: e^{-1/lambda} underflowed to 0; use the depletion limit");
    }
    double z = closed_form::z(F, q);
    double below = q / z;
    double above = 1.0 / z;
    std::vector<double> probs(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        probs[i] = d.probs()[i] * (d.values()[i] <= params.a ? below : above);
    }
    return TiltedMeasure(d, params, z, below, above, std::move(probs));
}

double tilted_cdf_at_a(const DiscreteDistribution& d, TiltParams params) {
    validate(params);
    return closed_form::g_at_a(d.cdf(params.a), exp_neg_inv(params.lambda));
}

double kl_of_tilt(const DiscreteDistribution& d, TiltParams params) {
    validate(params);
    return closed_form::kl(d.cdf(params.a), exp_neg_inv(params.lambda));
}

}  // namespace klstress
