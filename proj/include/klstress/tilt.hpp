#pragma once

#include <vector>

#include "klstress/dist.hpp"

namespace klstress {

// Tilt multiplier and threshold. lambda must be positive and finite,
// a must be finite.
struct TiltParams {
    double lambda;
    double a;
};

// Closed forms in terms of F = F(a) and q = e^{-1/lambda}. Shared by the
// tilt layer and the solver, which bisects on lambda without materializing
// a tilted measure per iterate.
namespace closed_form {

// Normalizer Z = 1 - (1 - q) F.
double z(double F, double q);

// Tilted CDF value at the threshold, G = q F / Z.
double g_at_a(double F, double q);

// KL divergence of the tilt from the base, -log Z + G log q.
double kl(double F, double q);

// Dual objective F - G = F (1 - F)(1 - q) / Z.
double phi(double F, double q);

}  // namespace closed_form

// Exponentially tilted law: mass below the threshold scaled by q/Z, mass
// above scaled by 1/Z. Atoms are those of the base; only masses change.
class TiltedMeasure {
public:
    TiltedMeasure(DiscreteDistribution base, TiltParams params, double z,
                  double below_factor, double above_factor,
                  std::vector<double> tilted_probs)
        : base_(std::move(base)),
          params_(params),
          z_(z),
          below_factor_(below_factor),
          above_factor_(above_factor),
          tilted_probs_(std::move(tilted_probs)) {}

    const DiscreteDistribution& base() const { return base_; }
    const TiltParams& params() const { return params_; }
    double z() const { return z_; }
    double below_factor() const { return below_factor_; }
    double above_factor() const { return above_factor_; }
    const std::vector<double>& tilted_probs() const { return tilted_probs_; }

private:
    DiscreteDistribution base_;
    TiltParams params_;
    double z_;
    double below_factor_;
    double above_factor_;
    std::vector<double> tilted_probs_;
};

// Z(lambda, a) in (0, 1].
double normalizer(const DiscreteDistribution& d, TiltParams params);

// Builds the tilted measure. Throws DepletionUnderflow when e^{-1/lambda}
// evaluates to exactly 0 while 0 < F(a) < 1.
TiltedMeasure tilt(const DiscreteDistribution& d, TiltParams params);

// G_{lambda,a}(a) = e^{-1/lambda} F(a) / Z in [0, F(a)].
double tilted_cdf_at_a(const DiscreteDistribution& d, TiltParams params);

// D_KL(Q_{lambda,a} || P) = -log Z - G(a)/lambda, nonnegative.
double kl_of_tilt(const DiscreteDistribution& d, TiltParams params);

}  // namespace klstress
