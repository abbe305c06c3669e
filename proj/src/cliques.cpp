#include "idnc/cliques.hpp"

#include <algorithm>
#include <string>

#include "idnc/errors.hpp"

namespace idnc {

namespace {

void bron_kerbosch(const IdncGraph& g, CodingSet r, CodingSet p, CodingSet x,
                   std::vector<CodingSet>& out) {
    if (p == 0 && x == 0) {
        out.push_back(r);
        return;
    }
    // pivot: vertex of P|X with the most neighbors in P
    int pivot = -1;
    int best = -1;
    for_each_packet(p | x, [&](int u) {
        const int cnt = set_size(g.neighbors(u) & p);
        if (cnt > best) {
            best = cnt;
            pivot = u;
        }
    });
    CodingSet candidates = p & ~g.neighbors(pivot);
    while (candidates) {
        const int v = lowest_packet(candidates);
        candidates &= candidates - 1;
        const CodingSet vb = packet_bit(v);
        bron_kerbosch(g, r | vb, p & g.neighbors(v), x & g.neighbors(v), out);
        p &= ~vb;
        x |= vb;
    }
}

void check_limit(int live, const EnumerationOptions& opts) {
    if (live > opts.max_vertices)
        throw LimitExceededError("clique enumeration refused: " + std::to_string(live) +
                                 " vertices exceeds limit " + std::to_string(opts.max_vertices));
}

}  // namespace

std::vector<CodingSet> enumerate_maximal_cliques_in(const IdncGraph& g, CodingSet alive,
                                                    const EnumerationOptions& opts) {
    check_limit(set_size(alive), opts);
    std::vector<CodingSet> out;
    if (alive == 0) return out;

    // run on the induced subgraph by masking adjacency
    IdncGraph sub(g.size());
    for_each_packet(alive, [&](int v) {
        for_each_packet(g.neighbors_within(v, alive), [&](int u) {
            if (u > v) sub.add_edge(v, u);
        });
    });
    bron_kerbosch(sub, 0, alive, 0, out);
    std::sort(out.begin(), out.end(), set_lex_less);
    return out;
}

std::vector<CodingSet> enumerate_maximal_cliques(const IdncGraph& g,
                                                 const EnumerationOptions& opts) {
    return enumerate_maximal_cliques_in(g, g.vertex_mask(), opts);
}

CodingSet heuristic_max_clique_in(const IdncGraph& g, CodingSet alive,
                                  HeuristicCliqueStats* stats) {
    CodingSet keep = 0;
    while (alive) {
        if (stats) stats->weighting_steps += set_size(alive) - 1;
        int best_v = -1;
        int best_w = -1;
        for_each_packet(alive, [&](int v) {
            const int w = set_size(g.neighbors_within(v, alive));
            if (w > best_w) {
                best_w = w;
                best_v = v;
            }
        });
        keep |= packet_bit(best_v);
        // drops the non-neighbors and best_v itself in one step
        alive &= g.neighbors(best_v);
    }
    return keep;
}

CodingSet heuristic_max_clique(const IdncGraph& g, HeuristicCliqueStats* stats) {
    return heuristic_max_clique_in(g, g.vertex_mask(), stats);
}

CodingSet exact_max_clique_in(const IdncGraph& g, CodingSet alive,
                              const EnumerationOptions& opts) {
    const std::vector<CodingSet> cliques = enumerate_maximal_cliques_in(g, alive, opts);
    CodingSet best = 0;
    long best_degsum = 0;
    for (CodingSet c : cliques) {
        long degsum = 0;
        for_each_packet(c, [&](int v) { degsum += set_size(g.neighbors_within(v, alive)); });
        const bool better =
            set_size(c) > set_size(best) ||
            (set_size(c) == set_size(best) &&
             (degsum < best_degsum || (degsum == best_degsum && set_lex_less(c, best))));
        if (best == 0 || better) {
            best = c;
            best_degsum = degsum;
        }
    }
    return best;
}

CodingSet exact_max_clique(const IdncGraph& g, const EnumerationOptions& opts) {
    return exact_max_clique_in(g, g.vertex_mask(), opts);
}

namespace {

// k-colorability check over vertices ordered by descending degree.
bool colorable(const IdncGraph& g, const std::vector<int>& order, std::vector<int>& color,
               std::size_t pos, int k) {
    if (pos == order.size()) return true;
    const int v = order[pos];
    for (int c = 0; c < k; ++c) {
        bool ok = true;
        for_each_packet(g.neighbors(v), [&](int u) {
            if (color[u] == c) ok = false;
        });
        if (!ok) continue;
        color[v] = c;
        if (colorable(g, order, color, pos + 1, k)) return true;
        color[v] = -1;
        // a fresh color is interchangeable with any other fresh color
        bool fresh = true;
        for (std::size_t i = 0; i < pos; ++i)
            if (color[order[i]] == c) fresh = false;
        if (fresh) break;
    }
    return false;
}

}  // namespace

int chromatic_number(const IdncGraph& g, const ChromaticOptions& opts) {
    if (g.size() > opts.max_vertices)
        throw LimitExceededError("chromatic oracle refused: " + std::to_string(g.size()) +
                                 " vertices exceeds limit " + std::to_string(opts.max_vertices));
    if (g.size() == 0) return 0;

    std::vector<int> order(g.size());
    for (int v = 0; v < g.size(); ++v) order[v] = v;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return g.degree(a) > g.degree(b); });

    const int lb = set_size(heuristic_max_clique(g));
    for (int k = lb; k <= g.size(); ++k) {
        std::vector<int> color(g.size(), -1);
        if (colorable(g, order, color, 0, k)) return k;
    }
    return g.size();
}

}  // namespace idnc
