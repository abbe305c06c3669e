#pragma once

#include <span>
#include <utility>
#include <vector>

#include "idnc/cliques.hpp"
#include "idnc/graph.hpp"
#include "idnc/rational.hpp"
#include "idnc/solver.hpp"

namespace idnc {

// Worst-case transmissions over all conflict states with k packets and m0
// coding opportunities: a staircase that spends opportunities one packet at
// a time (k, then k-1 for m0 in [1,k-1], then k-2, ...).
int loose_upper_bound(int k, long m0);

// Best-case transmissions over the same family: the smallest number of
// groups the packets can form with at most m0 non-conflicting pairs inside
// groups. Balanced group sizes spend the fewest pairs, so this is the
// smallest p whose balanced partition fits the budget.
int loose_lower_bound(int k, long m0);

// ceil(k^2 / (k + 2*m0)), a closed-form lower bound; never exceeds
// loose_lower_bound.
int geller_lower_bound(int k, long m0);

struct ThroughputBounds {
    int loose_lower = 0;
    int loose_upper = 0;
    int tight_lower = 0;  // clique of the complement graph
    int tight_upper = 0;  // greedy clique-partition cardinality
    CliqueFinder mode = CliqueFinder::Exact;
};

// Tight bounds from the instance graph. In heuristic mode the complement
// clique is found greedily; it still certifies a valid lower bound (any
// clique does), just possibly a weaker one than the true clique number.
ThroughputBounds tight_transmission_bounds(const IdncGraph& g, CliqueFinder mode,
                                           const EnumerationOptions& opts = {});

// Average delay of a served-demand profile: sum_u u*tc[u] / sum_u tc[u].
Rational delay_of_profile(std::span<const long> tc);

// Loose delay bounds for (k, m0, targets). Lower: the loose-lower-bound
// cardinality with the first set absorbing all demand mass except the U-1
// smallest targets. Upper: (loose_upper_bound + 1) / 2, the uniform-profile
// worst case.
std::pair<Rational, Rational> loose_delay_bounds(int k, long m0, std::span<const int> targets);

struct TightDelayBounds {
    Rational lower;
    Rational upper;
    std::vector<long> tc_profile;  // served-demand profile of the upper-bound solution
};

// Tight delay bounds. Lower: the complement-clique members must occupy
// distinct slots, best case all other packets ride in slot one. Upper: the
// delay of the greedy clique partition under the residual-demand order.
TightDelayBounds tight_delay_bounds(const IdncGraph& g, std::span<const int> targets,
                                    CliqueFinder mode, const EnumerationOptions& opts = {});

// Probability that two packets conflict after a systematic phase with
// erasure probability pe and n_total receivers: 1 - (1 - pe^2)^n_total.
double conflict_probability(double pe, int n_total);

// Asymptotic chromatic-number estimate for a random conflict graph:
// 0.5 * log(1/(1-pc)) * k_total / log(k_total). Accurate only for large
// k_total. The base parameter is exposed for transparency but the value is
// base-invariant (the base cancels between numerator and denominator).
double random_graph_transmission_estimate(int k_total, double pc, double log_base = 0.0);

}  // namespace idnc
