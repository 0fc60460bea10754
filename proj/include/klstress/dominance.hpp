#pragma once

#include <span>

#include "klstress/dist.hpp"
#include "klstress/tilt.hpp"

namespace klstress {

struct FsdResult {
    bool ok;
    double max_violation;  // max(0, largest G* - F gap over atoms)
};

// CDF of the tilted measure via the piecewise form:
// (q/Z) F(x) for x <= a, and (q/Z) F(a) + (1/Z) [F(x) - F(a)] for x > a.
double tilted_cdf(const TiltedMeasure& t, double x);

// First-order dominance of the tilted law over its base: F(x) >= G*(x)
// at every atom, up to 1e-12 roundoff in Z. Throws MismatchedSupport if
// t was built over different atoms.
FsdResult check_fsd(const DiscreteDistribution& base, const TiltedMeasure& t);

// Same check for an arbitrary reweighting of the base atoms (used for the
// depletion-limit optimizer, which is not representable as a TiltedMeasure).
FsdResult check_fsd_probs(const DiscreteDistribution& base,
                          std::span<const double> probs);

}  // namespace klstress
