#pragma once

#include <vector>

#include "klstress/dist.hpp"

namespace klstress {

// Joint mass matrix over atom pairs with marginals P (rows) and Q (columns).
struct Coupling {
    std::vector<double> row_values;
    std::vector<double> col_values;
    std::vector<std::vector<double>> mass;  // mass[i][j] on (row i, col j)
};

struct CouplingCost {
    double cost;
    Coupling coupling;
};

// Primal transport value T(P,Q) = min over couplings of the mass on
// {y > x}, solved as 1 minus a bipartite max-flow over non-crossing pairs
// (y <= x). Supports of size <= 64 each.
CouplingCost min_coupling_cost(const DiscreteDistribution& p,
                               const DiscreteDistribution& q);

// Direct-sum KL divergence sum_i q_i log(q_i / p_i). Requires the support
// of q to be contained in the support of p.
double kl_direct(const DiscreteDistribution& q, const DiscreteDistribution& p);

// Grid enumeration of candidate laws Q on p's atoms: keeps those inside
// the KL ball and maximizes the coupling cost. A lower bound on V_eps
// converging as grid_step -> 0. Supports of size <= 4.
double brute_force_V(const DiscreteDistribution& p, double eps,
                     double grid_step);

}  // namespace klstress
