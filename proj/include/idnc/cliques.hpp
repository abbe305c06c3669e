#pragma once

#include <vector>

#include "idnc/graph.hpp"

namespace idnc {

struct EnumerationOptions {
    // Refusal threshold for the exponential-worst-case enumeration. The
    // bitset representation caps instances at kMaxPackets vertices, so the
    // limit is only configurable downwards.
    int max_vertices = kMaxPackets;
};

// All maximal cliques of g (Bron-Kerbosch with pivoting), in ascending
// lexicographic member order. Output size can be exponential in the vertex
// count; the options limit guards against oversized instances.
std::vector<CodingSet> enumerate_maximal_cliques(const IdncGraph& g,
                                                 const EnumerationOptions& opts = {});

// Same, restricted to the subgraph induced on `alive`.
std::vector<CodingSet> enumerate_maximal_cliques_in(const IdncGraph& g, CodingSet alive,
                                                    const EnumerationOptions& opts = {});

struct HeuristicCliqueStats {
    // Scan work per selection pass: |V|-1 on a working graph with |V| live
    // vertices. Telescopes to K(K-1)/2 on a complete graph, the worst case.
    long weighting_steps = 0;
};

// Greedy maximal clique: repeatedly keep the highest-degree vertex of the
// working graph and drop its non-neighbors. Ties go to the lowest index.
CodingSet heuristic_max_clique(const IdncGraph& g, HeuristicCliqueStats* stats = nullptr);
CodingSet heuristic_max_clique_in(const IdncGraph& g, CodingSet alive,
                                  HeuristicCliqueStats* stats = nullptr);

// A maximum clique, via full enumeration. Among maximum cliques prefers the
// one with the smallest total vertex degree (keeps well-connected vertices
// available for later extraction), then the lexicographically smallest.
CodingSet exact_max_clique(const IdncGraph& g, const EnumerationOptions& opts = {});
CodingSet exact_max_clique_in(const IdncGraph& g, CodingSet alive,
                              const EnumerationOptions& opts = {});

struct ChromaticOptions {
    int max_vertices = 16;  // exhaustive search; meant for test oracles
};

// Exact chromatic number by branch and bound. Refuses instances above the
// option limit.
int chromatic_number(const IdncGraph& g, const ChromaticOptions& opts = {});

}  // namespace idnc
