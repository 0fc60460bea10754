#pragma once

#include <cstdint>
#include <vector>

#include "klstress/tilt.hpp"

namespace klstress {

enum class ScenarioMethod { kResample, kWeights };

// Stressed scenario draws; all draws are atoms of the base distribution and
// the sequence is a pure function of (seed, measure, n).
struct ScenarioSet {
    std::vector<double> draws;
    std::uint64_t seed;
    TiltParams source;
    ScenarioMethod method;
};

// Per-atom Radon-Nikodym factors dQ/dP; the P-weighted mean is 1.
std::vector<double> importance_weights(const TiltedMeasure& t);

// n inverse-CDF draws from the tilted law on a SplitMix64 stream.
ScenarioSet sample(const TiltedMeasure& t, std::size_t n, std::uint64_t seed);

}  // namespace klstress
