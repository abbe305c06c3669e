#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "idnc/model.hpp"

namespace idnc {

// Undirected graph on packet vertices; an edge joins two packets that can be
// coded together (no receiver wants both). Adjacency is one bitset word per
// vertex, no self-loops.
class IdncGraph {
public:
    IdncGraph() = default;
    explicit IdncGraph(int n_vertices);

    static IdncGraph from_conflicts(const ConflictMatrix& conflicts);
    static IdncGraph from_edges(int n_vertices, const std::vector<std::pair<int, int>>& edges);

    int size() const { return n_; }
    CodingSet vertex_mask() const {
        return n_ == kMaxPackets ? ~CodingSet{0} : (packet_bit(n_) - 1);
    }

    CodingSet neighbors(int v) const { return adj_[v]; }
    bool has_edge(int i, int j) const { return i != j && set_contains(adj_[i], j); }
    void add_edge(int i, int j);

    int degree(int v) const { return set_size(adj_[v]); }
    long edge_count() const;

    IdncGraph complement() const;

    // Subgraph induced on `keep`, preserving vertex numbering. Vertices
    // outside `keep` become isolated and excluded sets should mask them out.
    CodingSet neighbors_within(int v, CodingSet keep) const { return adj_[v] & keep; }

    bool is_clique(CodingSet vertices) const;

private:
    int n_ = 0;
    std::vector<CodingSet> adj_;
};

}  // namespace idnc
