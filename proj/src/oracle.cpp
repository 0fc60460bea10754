#include "klstress/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "klstress/errors.hpp"

namespace klstress {

namespace {

constexpr double kFlowTol = 1e-12;

// Edmonds-Karp on a dense residual matrix; node count stays below 132.
double max_flow(std::vector<std::vector<double>>& cap, int source, int sink) {
    const int n = static_cast<int>(cap.size());
    double total = 0.0;
    std::vector<int> parent(n);
    for (;;) {
        std::fill(parent.begin(), parent.end(), -1);
        parent[source] = source;
        std::deque<int> queue{source};
        while (!queue.empty() && parent[sink] < 0) {
            int u = queue.front();
            queue.pop_front();
            for (int v = 0; v < n; ++v) {
                if (parent[v] < 0 && cap[u][v] > kFlowTol) {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if (parent[sink] < 0) break;
        double bottleneck = std::numeric_limits<double>::infinity();
        for (int v = sink; v != source; v = parent[v]) {
            bottleneck = std::min(bottleneck, cap[parent[v]][v]);
        }
        for (int v = sink; v != source; v = parent[v]) {
            cap[parent[v]][v] -= bottleneck;
            cap[v][parent[v]] += bottleneck;
        }
        total += bottleneck;
    }
    return total;
}

}  // namespace

CouplingCost min_coupling_cost(const DiscreteDistribution& p,
                               const DiscreteDistribution& q) {
    const std::size_t n = p.size(), m = q.size();
    if (n > 64 || m > 64) {
        throw SupportTooLarge("min_coupling_cost: supports limited to 64 atoms");
    }
    // Nodes: 0 = source, 1..n = p atoms, n+1..n+m = q atoms, n+m+1 = sink.
    const int source = 0;
    const int sink = static_cast<int>(n + m) + 1;
    std::vector<std::vector<double>> cap(
        static_cast<std::size_t>(sink) + 1,
        std::vector<double>(static_cast<std::size_t>(sink) + 1, 0.0));
    for (std::size_t i = 0; i < n; ++i) cap[source][1 + i] = p.probs()[i];
    for (std::size_t j = 0; j < m; ++j) cap[1 + n + j][sink] = q.probs()[j];
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            // Non-crossing pair: y_j <= x_i contributes no cost.
            if (q.values()[j] <= p.values()[i]) cap[1 + i][1 + n + j] = 2.0;
        }
    }
    double noncrossing = max_flow(cap, source, sink);
    double cost = 1.0 - noncrossing;
    if (cost < 0.0) cost = 0.0;

    Coupling coupling{p.values(), q.values(),
                      std::vector<std::vector<double>>(n, std::vector<double>(m, 0.0))};
    std::vector<double> row_left = p.probs();
    std::vector<double> col_left = q.probs();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (q.values()[j] <= p.values()[i]) {
                double sent = 2.0 - cap[1 + i][1 + n + j];  // flow on the edge
                if (sent > kFlowTol) {
                    coupling.mass[i][j] = sent;
                    row_left[i] -= sent;
                    col_left[j] -= sent;
                }
            }
        }
    }
    // Residual mass can only sit on crossing pairs (otherwise the flow was
    // not maximal); fill it greedily to complete the marginals.
    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (row_left[i] > kFlowTol && j < m) {
            if (col_left[j] <= kFlowTol) {
                ++j;
                continue;
            }
            double moved = std::min(row_left[i], col_left[j]);
            coupling.mass[i][j] += moved;
            row_left[i] -= moved;
            col_left[j] -= moved;
        }
    }
    return {cost, std::move(coupling)};
}

double kl_direct(const DiscreteDistribution& q, const DiscreteDistribution& p) {
    double kl = 0.0;
    std::size_t ip = 0;
    for (std::size_t iq = 0; iq < q.size(); ++iq) {
        while (ip < p.size() && p.values()[ip] < q.values()[iq]) ++ip;
        if (ip == p.size() || p.values()[ip] != q.values()[iq]) {
            throw NotAbsolutelyContinuous(
                "kl_direct: q has mass on an atom absent from p");
        }
        kl += q.probs()[iq] * std::log(q.probs()[iq] / p.probs()[ip]);
    }
    return kl < 0.0 ? 0.0 : kl;
}

double brute_force_V(const DiscreteDistribution& p, double eps,
                     double grid_step) {
    if (p.size() > 4) {
        throw SupportTooLarge("brute_force_V: supports limited to 4 atoms");
    }
    if (!(grid_step >= 1e-4) || !(grid_step <= 1e-1)) {
        throw InvalidInput("brute_force_V: grid_step must lie in [1e-4, 1e-1]");
    }
    if (!(eps > 0.0)) {
        throw NonPositiveEps("brute_force_V: eps must be positive");
    }
    const int k = static_cast<int>(std::lround(1.0 / grid_step));
    const std::size_t n = p.size();
    std::vector<int> counts(n, 0);
    double best = 0.0;

    std::vector<double> q_values;
    std::vector<double> q_probs;
    // Enumerates all compositions of k into n parts.
    auto evaluate = [&]() {
        double kl = 0.0;
        q_values.clear();
        q_probs.clear();
        for (std::size_t i = 0; i < n; ++i) {
            if (counts[i] == 0) continue;
            double qi = static_cast<double>(counts[i]) / k;
            kl += qi * std::log(qi / p.probs()[i]);
            q_values.push_back(p.values()[i]);
            q_probs.push_back(qi);
        }
        if (kl > eps) return;
        auto q = DiscreteDistribution::from_samples(q_values, q_probs);
        best = std::max(best, min_coupling_cost(p, q).cost);
    };
    auto recurse = [&](auto&& self, std::size_t i, int remaining) -> void {
        if (i + 1 == n) {
            counts[i] = remaining;
            evaluate();
            return;
        }
        for (int c = 0; c <= remaining; ++c) {
            counts[i] = c;
            self(self, i + 1, remaining - c);
        }
    };
    recurse(recurse, 0, k);
    return best;
}

}  // namespace klstress
