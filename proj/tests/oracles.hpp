#pragma once

// Independent brute-force oracles. Everything here recomputes results from
// first principles, without touching the implementation paths under test.

#include <algorithm>
#include <random>
#include <vector>

#include "idnc/graph.hpp"
#include "idnc/model.hpp"
#include "idnc/rng.hpp"

namespace idnc::test {

// All maximal cliques by scanning every vertex subset.
inline std::vector<CodingSet> brute_maximal_cliques(const IdncGraph& g) {
    const int n = g.size();
    std::vector<CodingSet> cliques;
    for (CodingSet s = 1; s < (CodingSet{1} << n); ++s) {
        bool clique = true;
        for (int i = 0; i < n && clique; ++i)
            for (int j = i + 1; j < n && clique; ++j)
                if (set_contains(s, i) && set_contains(s, j) && !g.has_edge(i, j))
                    clique = false;
        if (!clique) continue;
        bool maximal = true;
        for (int v = 0; v < n && maximal; ++v) {
            if (set_contains(s, v)) continue;
            bool joins = true;
            for_each_packet(s, [&](int u) {
                if (!g.has_edge(u, v)) joins = false;
            });
            if (joins) maximal = false;
        }
        if (maximal) cliques.push_back(s);
    }
    std::sort(cliques.begin(), cliques.end(), set_lex_less);
    return cliques;
}

// Exact chromatic number by enumerating every color assignment (k^n walk),
// n <= 8 or so.
inline bool brute_colorable(const IdncGraph& g, int k) {
    const int n = g.size();
    std::vector<int> color(n, 0);
    while (true) {
        bool proper = true;
        for (int i = 0; i < n && proper; ++i)
            for (int j = i + 1; j < n && proper; ++j)
                if (g.has_edge(i, j) && color[i] == color[j]) proper = false;
        if (proper) return true;
        int pos = 0;
        while (pos < n && color[pos] == k - 1) color[pos++] = 0;
        if (pos == n) return false;
        ++color[pos];
    }
}

inline int brute_chromatic(const IdncGraph& g) {
    if (g.size() == 0) return 0;
    for (int k = 1; k <= g.size(); ++k)
        if (brute_colorable(g, k)) return k;
    return g.size();
}

// All minimum-size subfamilies of `cliques` covering every packet.
inline std::vector<std::vector<CodingSet>> brute_minimum_collections(
    const std::vector<CodingSet>& cliques, int n_packets) {
    const CodingSet universe =
        n_packets == kMaxPackets ? ~CodingSet{0} : (packet_bit(n_packets) - 1);
    const int m = static_cast<int>(cliques.size());
    for (int size = 1; size <= m; ++size) {
        std::vector<std::vector<CodingSet>> found;
        std::vector<int> pick(size);
        // iterate over all index combinations of the given size
        for (int i = 0; i < size; ++i) pick[i] = i;
        while (true) {
            CodingSet covered = 0;
            for (int i : pick) covered |= cliques[i];
            if ((covered & universe) == universe) {
                std::vector<CodingSet> sets;
                for (int i : pick) sets.push_back(cliques[i]);
                std::sort(sets.begin(), sets.end(), set_lex_less);
                found.push_back(std::move(sets));
            }
            int pos = size - 1;
            while (pos >= 0 && pick[pos] == m - size + pos) --pos;
            if (pos < 0) break;
            ++pick[pos];
            for (int i = pos + 1; i < size; ++i) pick[i] = pick[i - 1] + 1;
        }
        if (!found.empty()) {
            std::sort(found.begin(), found.end());
            return found;
        }
    }
    return {};
}

// Smallest group count whose within-group pair total fits the budget,
// scanning every integer partition.
inline int brute_min_groups(int k, long budget) {
    int best = k;
    std::vector<int> parts;
    auto rec = [&](auto&& self, int remaining, int max_part) -> void {
        if (remaining == 0) {
            long cost = 0;
            for (int s : parts) cost += static_cast<long>(s) * (s - 1) / 2;
            if (cost <= budget) best = std::min(best, static_cast<int>(parts.size()));
            return;
        }
        for (int next = std::min(remaining, max_part); next >= 1; --next) {
            parts.push_back(next);
            self(self, remaining - next, next);
            parts.pop_back();
        }
    };
    rec(rec, k, k);
    return best;
}

// Erdos-Renyi style graph, each edge present with probability p.
inline IdncGraph random_graph(int n, double p, std::mt19937_64& rng) {
    IdncGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (next_unit(rng) < p) g.add_edge(i, j);
    return g;
}

// Random nonempty reduced demand matrix with at most max_n receivers and
// max_k packets.
inline StateFeedbackMatrix random_sfm(int max_n, int max_k, std::mt19937_64& rng) {
    while (true) {
        const int n = next_int(rng, 1, max_n);
        const int k = next_int(rng, 1, max_k);
        const double p = 0.15 + 0.7 * next_unit(rng);
        std::vector<CodingSet> rows(n, 0);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < k; ++c)
                if (next_unit(rng) < p) rows[r] |= packet_bit(c);
        const StateFeedbackMatrix sfm = StateFeedbackMatrix::reduce(rows, k);
        if (!sfm.empty()) return sfm;
    }
}

// Induced subgraph on `keep` with vertices renumbered 0..|keep|-1.
inline IdncGraph induced_subgraph(const IdncGraph& g, CodingSet keep) {
    const std::vector<int> verts = set_members(keep);
    IdncGraph out(static_cast<int>(verts.size()));
    for (std::size_t a = 0; a < verts.size(); ++a)
        for (std::size_t b = a + 1; b < verts.size(); ++b)
            if (g.has_edge(verts[a], verts[b]))
                out.add_edge(static_cast<int>(a), static_cast<int>(b));
    return out;
}

}  // namespace idnc::test
