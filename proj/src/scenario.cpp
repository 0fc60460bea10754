#include "klstress/scenario.hpp"

#include <algorithm>
#include <numeric>

#include "klstress/errors.hpp"
#include "klstress/rng.hpp"

namespace klstress {

std::vector<double> importance_weights(const TiltedMeasure& t) {
    const auto& base = t.base();
    std::vector<double> weights(base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        weights[i] = base.values()[i] <= t.params().a ? t.below_factor()
                                                      : t.above_factor();
    }
    return weights;
}

ScenarioSet sample(const TiltedMeasure& t, std::size_t n, std::uint64_t seed) {
    if (n == 0) {
        throw InvalidInput("sample: n must be at least 1");
    }
    std::vector<double> cum(t.tilted_probs().size());
    std::partial_sum(t.tilted_probs().begin(), t.tilted_probs().end(),
                     cum.begin());
    cum.back() = 1.0;  // guard against rounding at the top bin

    SplitMix64 rng(seed);
    std::vector<double> draws(n);
    const auto& values = t.base().values();
    for (std::size_t i = 0; i < n; ++i) {
        double u = rng.next_unit();
        auto it = std::upper_bound(cum.begin(), cum.end(), u);
        draws[i] = values[static_cast<std::size_t>(it - cum.begin())];
    }
    return {std::move(draws), seed, t.params(), ScenarioMethod::kResample};
}

}  // namespace klstress
