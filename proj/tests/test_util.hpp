#pragma once

#include <random>
#include <vector>

#include "klstress/dist.hpp"

namespace klstress::testing {

inline DiscreteDistribution uniform_on(std::initializer_list<double> values) {
    std::vector<double> v(values);
    return DiscreteDistribution::from_samples(v);
}

inline DiscreteDistribution random_distribution(std::mt19937_64& rng,
                                                int max_atoms,
                                                int min_atoms = 1) {
    std::uniform_int_distribution<int> size_dist(min_atoms, max_atoms);
    std::uniform_real_distribution<double> value_dist(-5.0, 5.0);
    std::uniform_real_distribution<double> weight_dist(0.05, 1.0);
    int n = size_dist(rng);
    std::vector<double> values(n), weights(n);
    for (int i = 0; i < n; ++i) {
        values[i] = value_dist(rng);
        weights[i] = weight_dist(rng);
    }
    return DiscreteDistribution::from_samples(values, weights);
}

}  // namespace klstress::testing
