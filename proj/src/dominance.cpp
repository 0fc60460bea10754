#include "klstress/dominance.hpp"

#include <algorithm>
#include <cmath>

#include "klstress/errors.hpp"

namespace klstress {

double tilted_cdf(const TiltedMeasure& t, double x) {
    const auto& base = t.base();
    double a = t.params().a;
    double Fx = base.cdf(x);
    if (x <= a) {
        return t.below_factor() * Fx;
    }
    double Fa = base.cdf(a);
    return t.below_factor() * Fa + t.above_factor() * (Fx - Fa);
}

FsdResult check_fsd(const DiscreteDistribution& base, const TiltedMeasure& t) {
    if (base.values() != t.base().values()) {
        throw MismatchedSupport("check_fsd: tilted measure built over different atoms");
    }
    return check_fsd_probs(base, t.tilted_probs());
}

FsdResult check_fsd_probs(const DiscreteDistribution& base,
                          std::span<const double> probs) {
    if (probs.size() != base.size()) {
        throw MismatchedSupport("check_fsd: probability array length mismatch");
    }
    double g_cum = 0.0;
    double worst = 0.0;  // largest G* - F gap
    for (std::size_t i = 0; i < base.size(); ++i) {
        g_cum += probs[i];
        worst = std::max(worst, g_cum - base.cdf_at(i));
    }
    return {worst <= 1e-12, worst};
}

}  // namespace klstress
