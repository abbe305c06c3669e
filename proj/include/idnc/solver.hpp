#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "idnc/cliques.hpp"
#include "idnc/graph.hpp"
#include "idnc/model.hpp"
#include "idnc/rational.hpp"

namespace idnc {

// An ordered list of coding sets covering every packet at least once,
// together with the per-packet appearance counts.
struct Collection {
    std::vector<CodingSet> sets;
    std::vector<int> diversity;  // d_k, indexed by packet

    int size() const { return static_cast<int>(sets.size()); }
    CodingSet covered() const;
    bool covers_all(int n_packets) const;
};

Collection make_collection(std::vector<CodingSet> sets, int n_packets);

struct SolveOptions {
    // Cap on partial collections kept by the exact branch search. The search
    // is exhaustive and can grow exponentially; hitting the cap throws
    // BudgetExceededError rather than silently dropping candidates.
    std::size_t max_candidates = 1'000'000;
};

// Every minimum-cardinality collection of maximal coding sets satisfying the
// diversity constraint. Branches level by level on the least-covered packet,
// so the first level with a feasible collection is the minimum one. Output
// is duplicate-free, each collection in canonical (lexicographic) set order.
std::vector<Collection> optimal_minimum_collections(std::span<const CodingSet> all_cliques,
                                                    int n_packets,
                                                    const SolveOptions& opts = {});

// The minimum collection maximizing sum_k d_k * T_k, computed by dynamic
// programming over covered-packet masks. The score is additive over chosen
// sets and the branch rule depends only on the covered mask, so states with
// one mask collapse; instances whose minimum collections are too numerous to
// enumerate still solve. Equivalent to select_collection over the full
// enumeration up to tie-breaks (documented: higher score, then smaller set).
Collection optimal_selected_collection(std::span<const CodingSet> all_cliques,
                                       int n_packets, std::span<const int> targets,
                                       const SolveOptions& opts = {});

// The candidate maximizing sum_k d_k * T_k; ties go to the lexicographically
// smallest set sequence. Candidates must share one cardinality.
Collection select_collection(std::span<const Collection> candidates,
                             std::span<const int> targets);

// Smallest erasure-free delay over the candidates, each under the
// residual-demand order: what the best throughput-optimal solution achieves.
Rational best_collection_delay(std::span<const Collection> candidates,
                               std::span<const int> targets);

// Reorders sets greedily by residual served demands: at each position, the
// remaining set covering the most demands of still-unserved packets wins,
// ties by lowest original position.
Collection order_collection(Collection c, std::span<const int> targets);
Collection order_collection(Collection c, const StateFeedbackMatrix& sfm);

// First position in the ordered collection containing each packet (1-based).
std::vector<int> first_slots(const Collection& c, int n_packets);

// Average first-inclusion slot weighted by targets: the erasure-free average
// packet decoding delay of sending the collection in its current order.
Rational erasure_free_delay(const Collection& c, std::span<const int> targets);
Rational erasure_free_delay(const Collection& c, const StateFeedbackMatrix& sfm);

// Residual served-demand profile of the collection in its current order
// (the summands of the delay above).
std::vector<long> residual_profile(const Collection& c, std::span<const int> targets);

// Greedy cover: repeatedly take the maximal coding set covering the most
// still-uncovered packets. Cardinality can exceed the optimum. Ties prefer
// the set whose members appear in fewest cliques overall, then lexicographic.
Collection hybrid_greedy_collection(std::span<const CodingSet> all_cliques, int n_packets);

enum class CliqueFinder { Exact, Heuristic };

// Greedy partition: extract a maximum (or greedy-heuristic) clique, delete
// it, repeat. Parts are disjoint and cover every vertex exactly once.
Collection partition_clique_cover(const IdncGraph& g, CliqueFinder finder,
                                  const EnumerationOptions& opts = {});

// Partition with the greedy clique finder, then enlarge each part with a
// clique of previously covered vertices adjacent to all of it, raising
// packet diversity at no cost in transmissions.
Collection heuristic_semi_online_collection(const IdncGraph& g);

enum class Optimality { Optimal, Hybrid, Heuristic };

struct SolveReport {
    Collection collection;
    int transmissions = 0;         // collection cardinality
    Rational avg_delay;            // erasure-free delay of the emitted order
    std::vector<int> first_slot;   // per packet, 1-based
    long selection_score = 0;      // sum_k d_k * T_k of the emitted collection
};

// One semi-online solve on the current demand matrix: build the graph, find
// the collection for the requested optimality level, order it, evaluate.
SolveReport solve_semi_online(const StateFeedbackMatrix& sfm, Optimality level,
                              const SolveOptions& opts = {});

// The single coding set a fully-online sender transmits next.
//  - Optimal: first set of the ordered, selected minimum collection.
//  - Hybrid: the maximal coding set targeting the most receivers.
//  - Heuristic: the greedy clique of the current graph.
CodingSet fully_online_set(const StateFeedbackMatrix& sfm, Optimality level,
                           const SolveOptions& opts = {});

// Erasure-free fully-online trajectory: repeatedly pick a set, deliver it to
// every targeted receiver, update the matrix. Reports the emitted sequence.
SolveReport solve_fully_online(const StateFeedbackMatrix& sfm, Optimality level,
                               const SolveOptions& opts = {});

}  // namespace idnc
