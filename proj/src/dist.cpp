#include "klstress/dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "klstress/errors.hpp"

namespace klstress {

DiscreteDistribution::DiscreteDistribution(std::vector<double> values,
                                           std::vector<double> probs)
    : values_(std::move(values)), probs_(std::move(probs)) {
    cum_.resize(probs_.size());
    std::partial_sum(probs_.begin(), probs_.end(), cum_.begin());
    // Pin the top of the CDF: the running sum can land an ulp past 1, which
    // would corrupt Z = 1 - (1-q)F(a) badly when q is tiny.
    for (double& c : cum_) c = std::min(c, 1.0);
    cum_.back() = 1.0;
    if (probs_.size() > 1) {
        probs_.back() = 1.0 - cum_[probs_.size() - 2];
    } else {
        probs_.back() = 1.0;
    }
}

DiscreteDistribution DiscreteDistribution::from_samples(
    std::span<const double> values, std::span<const double> weights) {
    if (values.empty()) {
        throw InvalidInput("from_samples: empty value sequence");
    }
    if (!weights.empty() && weights.size() != values.size()) {
        throw InvalidInput("from_samples: weights length differs from values");
    }
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw InvalidInput("from_samples: nonfinite value");
        }
        double w = weights.empty() ? 1.0 : weights[i];
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw InvalidInput("from_samples: negative or nonfinite weight");
        }
        if (w > 0.0) pairs.emplace_back(values[i], w);
    }
    if (pairs.empty()) {
        throw InvalidInput("from_samples: all weights are zero");
    }
    std::sort(pairs.begin(), pairs.end());

    std::vector<double> vs;
    std::vector<double> ws;
    for (const auto& [v, w] : pairs) {
        if (!vs.empty() && v == vs.back()) {
            ws.back() += w;
        } else {
            vs.push_back(v);
            ws.push_back(w);
        }
    }
    double total = std::accumulate(ws.begin(), ws.end(), 0.0);
    for (double& w : ws) w /= total;
    return DiscreteDistribution(std::move(vs), std::move(ws));
}

double DiscreteDistribution::cdf(double x) const {
    auto it = std::upper_bound(values_.begin(), values_.end(), x);
    if (it == values_.begin()) return 0.0;
    return cum_[static_cast<std::size_t>(it - values_.begin()) - 1];
}

double DiscreteDistribution::quantile(double p) const {
    if (!(p > 0.0) || p > 1.0) {
        throw InvalidInput("quantile: p must lie in (0,1]");
    }
    auto it = std::lower_bound(cum_.begin(), cum_.end(), p);
    if (it == cum_.end()) --it;  // p == 1 with rounding in the running sum
    return values_[static_cast<std::size_t>(it - cum_.begin())];
}

SupDiff sup_diff(const DiscreteDistribution& p, const DiscreteDistribution& q) {
    std::vector<double> support;
    support.reserve(p.size() + q.size());
    std::merge(p.values().begin(), p.values().end(), q.values().begin(),
               q.values().end(), std::back_inserter(support));
    support.erase(std::unique(support.begin(), support.end()), support.end());

    double best = -std::numeric_limits<double>::infinity();
    double threshold = support.front();
    for (double a : support) {
        double diff = p.cdf(a) - q.cdf(a);
        if (diff > best) {
            best = diff;
            threshold = a;
        }
    }
    // The value at a -> -inf is 0, so the sup is never negative.
    if (best < 0.0) best = 0.0;
    return {threshold, best};
}

}  // namespace klstress
