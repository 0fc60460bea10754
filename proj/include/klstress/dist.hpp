#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace klstress {

// One-dimensional discrete probability law: strictly increasing atom
// locations with positive masses summing to 1. Immutable after
// construction; all member functions are const and thread-safe.
class DiscreteDistribution {
public:
    // Builds a law from raw observations. Duplicate values are merged with
    // summed weight; weights default to equal and are normalized to sum 1.
    static DiscreteDistribution from_samples(std::span<const double> values,
                                             std::span<const double> weights = {});

    const std::vector<double>& values() const { return values_; }
    const std::vector<double>& probs() const { return probs_; }
    std::size_t size() const { return values_.size(); }

    // Right-continuous CDF: total mass of atoms <= x.
    double cdf(double x) const;

    // Cumulative mass of the first i+1 atoms, i.e. F evaluated at atom i.
    double cdf_at(std::size_t i) const { return cum_[i]; }

    // Generalized inverse: smallest atom v with F(v) >= p, for p in (0,1].
    double quantile(double p) const;

private:
    DiscreteDistribution(std::vector<double> values, std::vector<double> probs);

    std::vector<double> values_;
    std::vector<double> probs_;
    std::vector<double> cum_;  // running sums, cum_.back() == 1
};

struct SupDiff {
    double threshold;  // smallest maximizing atom
    double value;      // max_a [F(a) - G(a)], clamped below at 0
};

// Dual statistic T(P,Q) = max_a [F(a) - G(a)], evaluated exactly over the
// union of the two atom sets (F - G is constant between atoms).
SupDiff sup_diff(const DiscreteDistribution& p, const DiscreteDistribution& q);

}  // namespace klstress
