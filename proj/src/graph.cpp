#include "idnc/graph.hpp"

#include <stdexcept>
#include <string>

namespace idnc {

IdncGraph::IdncGraph(int n_vertices) : n_(n_vertices) {
    if (n_ < 0 || n_ > kMaxPackets)
        throw std::invalid_argument("IdncGraph: vertex count must be in [0," +
                                    std::to_string(kMaxPackets) + "]");
    adj_.assign(static_cast<std::size_t>(n_), 0);
}

void IdncGraph::add_edge(int i, int j) {
    if (i == j) throw std::invalid_argument("IdncGraph: self-loop");
    if (i < 0 || j < 0 || i >= n_ || j >= n_)
        throw std::invalid_argument("IdncGraph: vertex out of range");
    adj_[i] |= packet_bit(j);
    adj_[j] |= packet_bit(i);
}

IdncGraph IdncGraph::from_conflicts(const ConflictMatrix& conflicts) {
    IdncGraph g(conflicts.packets());
    for (int i = 0; i < g.n_; ++i)
        for (int j = i + 1; j < g.n_; ++j)
            if (!conflicts.conflict(i, j)) g.add_edge(i, j);
    return g;
}

IdncGraph IdncGraph::from_edges(int n_vertices, const std::vector<std::pair<int, int>>& edges) {
    IdncGraph g(n_vertices);
    for (auto [i, j] : edges) g.add_edge(i, j);
    return g;
}

long IdncGraph::edge_count() const {
    long twice = 0;
    for (int v = 0; v < n_; ++v) twice += degree(v);
    return twice / 2;
}

IdncGraph IdncGraph::complement() const {
    IdncGraph g(n_);
    const CodingSet all = vertex_mask();
    for (int v = 0; v < n_; ++v) g.adj_[v] = all & ~adj_[v] & ~packet_bit(v);
    return g;
}

bool IdncGraph::is_clique(CodingSet vertices) const {
    bool ok = true;
    for_each_packet(vertices, [&](int v) {
        if ((vertices & ~packet_bit(v)) & ~adj_[v]) ok = false;
    });
    return ok;
}

}  // namespace idnc
