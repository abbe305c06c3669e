#include "idnc/solver.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "idnc/errors.hpp"

namespace idnc {

CodingSet Collection::covered() const {
    CodingSet all = 0;
    for (CodingSet s : sets) all |= s;
    return all;
}

bool Collection::covers_all(int n_packets) const {
    const CodingSet universe =
        n_packets == kMaxPackets ? ~CodingSet{0} : (packet_bit(n_packets) - 1);
    return (covered() & universe) == universe;
}

Collection make_collection(std::vector<CodingSet> sets, int n_packets) {
    Collection c;
    c.sets = std::move(sets);
    c.diversity.assign(n_packets, 0);
    for (CodingSet s : c.sets)
        for_each_packet(s, [&](int k) { ++c.diversity[k]; });
    return c;
}

namespace {

bool collection_lex_less(const std::vector<CodingSet>& a, const std::vector<CodingSet>& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] != b[i]) return set_lex_less(a[i], b[i]);
    }
    return a.size() < b.size();
}

struct VecHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const {
        std::size_t h = 0x9e3779b97f4a7c15ULL;
        for (std::uint32_t x : v) h = (h ^ x) * 0x100000001b3ULL;
        return h;
    }
};

}  // namespace

namespace {

// Packets that can never share a coding set with k: nothing in the complete
// maximal-set list contains both.
std::vector<CodingSet> conflict_masks(std::span<const CodingSet> all_cliques,
                                      int n_packets, CodingSet universe) {
    std::vector<CodingSet> compatible(n_packets, 0);
    for (CodingSet s : all_cliques)
        for_each_packet(s, [&](int k) { compatible[k] |= s; });
    std::vector<CodingSet> conflicts(n_packets);
    for (int k = 0; k < n_packets; ++k)
        conflicts[k] = universe & ~compatible[k] & ~packet_bit(k);
    return conflicts;
}

// Any pairwise-conflicting subset of `uncovered` needs one set per member,
// so its size lower-bounds the sets still missing.
int cover_lower_bound(CodingSet uncovered, std::span<const CodingSet> conflicts) {
    CodingSet chosen = 0;
    int count = 0;
    for_each_packet(uncovered, [&](int k) {
        if ((chosen & ~conflicts[k]) == 0) {
            chosen |= packet_bit(k);
            ++count;
        }
    });
    return count;
}

}  // namespace

std::vector<Collection> optimal_minimum_collections(std::span<const CodingSet> all_cliques,
                                                    int n_packets, const SolveOptions& opts) {
    if (all_cliques.empty())
        throw std::invalid_argument("optimal_minimum_collections: empty coding-set list");
    if (n_packets < 1) throw std::invalid_argument("optimal_minimum_collections: no packets");

    const CodingSet universe =
        n_packets == kMaxPackets ? ~CodingSet{0} : (packet_bit(n_packets) - 1);
    const int m = static_cast<int>(all_cliques.size());

    // Prefixes of a minimum collection always fit inside the feasible
    // cardinality of the greedy cover, so anything projected past it can be
    // dropped without losing a single minimum collection.
    const std::vector<CodingSet> conflicts =
        conflict_masks(all_cliques, n_packets, universe);
    int feasible = m;
    {
        CodingSet covered = 0;
        for (CodingSet s : all_cliques) covered |= s;
        if ((covered & universe) == universe)
            feasible = hybrid_greedy_collection(all_cliques, n_packets).size();
    }

    // Partial collections as sorted clique-index lists; level u holds all
    // distinct candidates of size u reachable by least-covered branching.
    std::vector<std::vector<std::uint32_t>> level{{}};
    std::vector<CodingSet> level_cover{0};

    for (int depth = 0;; ++depth) {
        if (depth > m)
            throw std::invalid_argument(
                "optimal_minimum_collections: coding-set list cannot cover all packets");

        // collect satisfying candidates at this level
        std::vector<Collection> done;
        for (std::size_t i = 0; i < level.size(); ++i) {
            if ((level_cover[i] & universe) != universe) continue;
            std::vector<CodingSet> sets;
            sets.reserve(level[i].size());
            for (std::uint32_t idx : level[i]) sets.push_back(all_cliques[idx]);
            std::sort(sets.begin(), sets.end(), set_lex_less);
            done.push_back(make_collection(std::move(sets), n_packets));
        }
        if (!done.empty()) {
            std::sort(done.begin(), done.end(), [](const Collection& a, const Collection& b) {
                return collection_lex_less(a.sets, b.sets);
            });
            done.erase(std::unique(done.begin(), done.end(),
                                   [](const Collection& a, const Collection& b) {
                                       return a.sets == b.sets;
                                   }),
                       done.end());
            return done;
        }

        // expand every candidate by the sets containing its least-covered packet
        std::vector<std::vector<std::uint32_t>> next;
        std::vector<CodingSet> next_cover;
        std::unordered_set<std::vector<std::uint32_t>, VecHash> seen;
        for (std::size_t i = 0; i < level.size(); ++i) {
            const CodingSet uncovered = universe & ~level_cover[i];

            // diversity of each uncovered packet among the unused sets
            int pick = -1;
            int pick_div = m + 1;
            for_each_packet(uncovered, [&](int k) {
                int div = 0;
                for (int s = 0; s < m; ++s) {
                    if (!set_contains(all_cliques[s], k)) continue;
                    // sets containing an uncovered packet are never in the
                    // partial collection, so no membership test is needed
                    ++div;
                }
                if (div < pick_div) {
                    pick_div = div;
                    pick = k;
                }
            });
            if (pick < 0 || pick_div == 0) continue;  // dead branch

            for (int s = 0; s < m; ++s) {
                if (!set_contains(all_cliques[s], pick)) continue;
                const CodingSet child_cover = level_cover[i] | all_cliques[s];
                const CodingSet still = universe & ~child_cover;
                if (depth + 1 + cover_lower_bound(still, conflicts) > feasible) continue;
                std::vector<std::uint32_t> child = level[i];
                child.insert(std::upper_bound(child.begin(), child.end(),
                                              static_cast<std::uint32_t>(s)),
                             static_cast<std::uint32_t>(s));
                if (!seen.insert(child).second) continue;
                if (next.size() + 1 > opts.max_candidates)
                    throw BudgetExceededError(
                        "optimal_minimum_collections: candidate cap " +
                        std::to_string(opts.max_candidates) + " exceeded at depth " +
                        std::to_string(depth + 1));
                next_cover.push_back(child_cover);
                next.push_back(std::move(child));
            }
        }
        if (next.empty())
            throw std::invalid_argument(
                "optimal_minimum_collections: coding-set list cannot cover all packets");
        level = std::move(next);
        level_cover = std::move(next_cover);
    }
}

Collection optimal_selected_collection(std::span<const CodingSet> all_cliques,
                                       int n_packets, std::span<const int> targets,
                                       const SolveOptions& opts) {
    if (all_cliques.empty())
        throw std::invalid_argument("optimal_selected_collection: empty coding-set list");
    if (n_packets < 1)
        throw std::invalid_argument("optimal_selected_collection: no packets");

    const CodingSet universe =
        n_packets == kMaxPackets ? ~CodingSet{0} : (packet_bit(n_packets) - 1);
    const int m = static_cast<int>(all_cliques.size());

    std::vector<long> weight(m, 0);
    for (int s = 0; s < m; ++s)
        for_each_packet(all_cliques[s], [&](int k) { weight[s] += targets[k]; });

    std::vector<int> diversity(n_packets, 0);
    for (CodingSet s : all_cliques)
        for_each_packet(s, [&](int k) { ++diversity[k]; });

    const std::vector<CodingSet> conflicts =
        conflict_masks(all_cliques, n_packets, universe);
    int feasible = m;
    {
        CodingSet covered = 0;
        for (CodingSet s : all_cliques) covered |= s;
        if ((covered & universe) == universe)
            feasible = hybrid_greedy_collection(all_cliques, n_packets).size();
    }

    struct State {
        long score = -1;
        int chosen_set = -1;     // edge into this state
        CodingSet prev_mask = 0;
    };
    std::vector<std::unordered_map<CodingSet, State>> levels;
    levels.push_back({{CodingSet{0}, State{0, -1, 0}}});

    for (int depth = 0;; ++depth) {
        if (depth > m)
            throw std::invalid_argument(
                "optimal_selected_collection: coding-set list cannot cover all packets");
        const auto& level = levels[depth];
        if (const auto it = level.find(universe); it != level.end()) {
            // walk the edge chain back to depth zero
            std::vector<CodingSet> sets;
            CodingSet mask = universe;
            for (int d = depth; d > 0; --d) {
                const State& st = levels[d].at(mask);
                sets.push_back(all_cliques[st.chosen_set]);
                mask = st.prev_mask;
            }
            std::reverse(sets.begin(), sets.end());
            return make_collection(std::move(sets), n_packets);
        }

        std::unordered_map<CodingSet, State> next;
        for (const auto& [mask, state] : level) {
            const CodingSet uncovered = universe & ~mask;
            int pick = -1;
            int pick_div = m + 1;
            for_each_packet(uncovered, [&](int k) {
                if (diversity[k] < pick_div) {
                    pick_div = diversity[k];
                    pick = k;
                }
            });
            if (pick < 0 || pick_div == 0) continue;

            for (int s = 0; s < m; ++s) {
                if (!set_contains(all_cliques[s], pick)) continue;
                const CodingSet child = mask | all_cliques[s];
                const CodingSet still = universe & ~child;
                if (depth + 1 + cover_lower_bound(still, conflicts) > feasible) continue;
                const long score = state.score + weight[s];
                auto [it, inserted] = next.try_emplace(child);
                State& slot = it->second;
                const bool better =
                    inserted || score > slot.score ||
                    (score == slot.score &&
                     (set_lex_less(all_cliques[s], all_cliques[slot.chosen_set]) ||
                      (all_cliques[s] == all_cliques[slot.chosen_set] &&
                       mask < slot.prev_mask)));
                if (better) slot = State{score, s, mask};
                if (next.size() > opts.max_candidates)
                    throw BudgetExceededError(
                        "optimal_selected_collection: candidate cap " +
                        std::to_string(opts.max_candidates) + " exceeded at depth " +
                        std::to_string(depth + 1));
            }
        }
        if (next.empty())
            throw std::invalid_argument(
                "optimal_selected_collection: coding-set list cannot cover all packets");
        levels.push_back(std::move(next));
    }
}

Collection select_collection(std::span<const Collection> candidates,
                             std::span<const int> targets) {
    if (candidates.empty())
        throw std::invalid_argument("select_collection: no candidates");
    const Collection* best = nullptr;
    long best_score = -1;
    for (const Collection& c : candidates) {
        if (c.size() != candidates.front().size())
            throw std::invalid_argument("select_collection: mixed cardinalities");
        long score = 0;
        for (std::size_t k = 0; k < c.diversity.size(); ++k)
            score += static_cast<long>(c.diversity[k]) * targets[k];
        if (!best || score > best_score ||
            (score == best_score && collection_lex_less(c.sets, best->sets))) {
            best = &c;
            best_score = score;
        }
    }
    return *best;
}

Rational best_collection_delay(std::span<const Collection> candidates,
                               std::span<const int> targets) {
    if (candidates.empty())
        throw std::invalid_argument("best_collection_delay: no candidates");
    Rational best;
    bool first = true;
    for (const Collection& c : candidates) {
        const Rational d = erasure_free_delay(order_collection(c, targets), targets);
        if (first || d < best) {
            best = d;
            first = false;
        }
    }
    return best;
}

namespace {

long residual_demands(CodingSet s, CodingSet uncovered, std::span<const int> targets) {
    long total = 0;
    for_each_packet(s & uncovered, [&](int k) { total += targets[k]; });
    return total;
}

}  // namespace

Collection order_collection(Collection c, std::span<const int> targets) {
    const int n_packets = static_cast<int>(c.diversity.size());
    std::vector<CodingSet> ordered;
    ordered.reserve(c.sets.size());
    std::vector<bool> used(c.sets.size(), false);
    CodingSet uncovered =
        n_packets == kMaxPackets ? ~CodingSet{0} : (packet_bit(n_packets) - 1);

    for (std::size_t pos = 0; pos < c.sets.size(); ++pos) {
        int best = -1;
        long best_served = -1;
        for (std::size_t i = 0; i < c.sets.size(); ++i) {
            if (used[i]) continue;
            const long served = residual_demands(c.sets[i], uncovered, targets);
            if (served > best_served) {
                best_served = served;
                best = static_cast<int>(i);
            }
        }
        used[best] = true;
        ordered.push_back(c.sets[best]);
        uncovered &= ~c.sets[best];
    }
    c.sets = std::move(ordered);
    return c;
}

Collection order_collection(Collection c, const StateFeedbackMatrix& sfm) {
    return order_collection(std::move(c), sfm.targets());
}

std::vector<int> first_slots(const Collection& c, int n_packets) {
    std::vector<int> slot(n_packets, 0);
    for (std::size_t u = 0; u < c.sets.size(); ++u)
        for_each_packet(c.sets[u], [&](int k) {
            if (slot[k] == 0) slot[k] = static_cast<int>(u) + 1;
        });
    return slot;
}

Rational erasure_free_delay(const Collection& c, std::span<const int> targets) {
    const int n_packets = static_cast<int>(targets.size());
    const std::vector<int> slot = first_slots(c, n_packets);
    long num = 0;
    long den = 0;
    for (int k = 0; k < n_packets; ++k) {
        if (slot[k] == 0)
            throw std::invalid_argument("erasure_free_delay: packet " + std::to_string(k) +
                                        " not covered");
        num += static_cast<long>(slot[k]) * targets[k];
        den += targets[k];
    }
    if (den == 0) return Rational(0);
    return Rational(num, den);
}

Rational erasure_free_delay(const Collection& c, const StateFeedbackMatrix& sfm) {
    return erasure_free_delay(c, sfm.targets());
}

std::vector<long> residual_profile(const Collection& c, std::span<const int> targets) {
    const int n_packets = static_cast<int>(targets.size());
    CodingSet uncovered =
        n_packets == kMaxPackets ? ~CodingSet{0} : (packet_bit(n_packets) - 1);
    std::vector<long> profile;
    profile.reserve(c.sets.size());
    for (CodingSet s : c.sets) {
        profile.push_back(residual_demands(s, uncovered, targets));
        uncovered &= ~s;
    }
    return profile;
}

Collection hybrid_greedy_collection(std::span<const CodingSet> all_cliques, int n_packets) {
    if (all_cliques.empty())
        throw std::invalid_argument("hybrid_greedy_collection: empty coding-set list");

    std::vector<int> appearances(n_packets, 0);
    for (CodingSet s : all_cliques)
        for_each_packet(s, [&](int k) { ++appearances[k]; });
    auto scarcity = [&](CodingSet s) {
        long total = 0;
        for_each_packet(s, [&](int k) { total += appearances[k]; });
        return total;
    };

    const CodingSet universe =
        n_packets == kMaxPackets ? ~CodingSet{0} : (packet_bit(n_packets) - 1);
    CodingSet uncovered = universe;
    std::vector<bool> used(all_cliques.size(), false);
    std::vector<CodingSet> chosen;
    while (uncovered) {
        int best = -1;
        int best_gain = -1;
        long best_scarcity = 0;
        for (std::size_t i = 0; i < all_cliques.size(); ++i) {
            if (used[i]) continue;
            const int gain = set_size(all_cliques[i] & uncovered);
            if (gain == 0) continue;
            const long sc = scarcity(all_cliques[i]);
            const bool better =
                gain > best_gain ||
                (gain == best_gain &&
                 (sc < best_scarcity ||
                  (sc == best_scarcity && set_lex_less(all_cliques[i], all_cliques[best]))));
            if (better) {
                best = static_cast<int>(i);
                best_gain = gain;
                best_scarcity = sc;
            }
        }
        if (best < 0)
            throw std::invalid_argument(
                "hybrid_greedy_collection: coding-set list cannot cover all packets");
        used[best] = true;
        chosen.push_back(all_cliques[best]);
        uncovered &= ~all_cliques[best];
    }
    return make_collection(std::move(chosen), n_packets);
}

Collection partition_clique_cover(const IdncGraph& g, CliqueFinder finder,
                                  const EnumerationOptions& opts) {
    std::vector<CodingSet> parts;
    CodingSet alive = g.vertex_mask();
    while (alive) {
        const CodingSet part = finder == CliqueFinder::Exact
                                   ? exact_max_clique_in(g, alive, opts)
                                   : heuristic_max_clique_in(g, alive);
        parts.push_back(part);
        alive &= ~part;
    }
    return make_collection(std::move(parts), g.size());
}

Collection heuristic_semi_online_collection(const IdncGraph& g) {
    std::vector<CodingSet> sets;
    CodingSet alive = g.vertex_mask();
    CodingSet covered = 0;
    while (alive) {
        const CodingSet part = heuristic_max_clique_in(g, alive);

        // candidates: already-covered vertices adjacent to every part member
        CodingSet candidates = covered;
        for_each_packet(part, [&](int v) { candidates &= g.neighbors(v); });
        const CodingSet extension =
            candidates ? heuristic_max_clique_in(g, candidates) : 0;

        sets.push_back(part | extension);
        covered |= part;
        alive &= ~part;
    }
    return make_collection(std::move(sets), g.size());
}

namespace {

SolveReport finish_report(Collection ordered, std::span<const int> targets) {
    SolveReport report;
    report.transmissions = ordered.size();
    report.avg_delay = erasure_free_delay(ordered, targets);
    report.first_slot = first_slots(ordered, static_cast<int>(targets.size()));
    report.selection_score = 0;
    for (std::size_t k = 0; k < ordered.diversity.size(); ++k)
        report.selection_score += static_cast<long>(ordered.diversity[k]) * targets[k];
    report.collection = std::move(ordered);
    return report;
}

Collection semi_online_collection(const IdncGraph& g, Optimality level,
                                  std::span<const int> targets, const SolveOptions& opts) {
    switch (level) {
        case Optimality::Optimal: {
            const std::vector<CodingSet> cliques = enumerate_maximal_cliques(g);
            return optimal_selected_collection(cliques, g.size(), targets, opts);
        }
        case Optimality::Hybrid: {
            const std::vector<CodingSet> cliques = enumerate_maximal_cliques(g);
            return hybrid_greedy_collection(cliques, g.size());
        }
        case Optimality::Heuristic:
            return heuristic_semi_online_collection(g);
    }
    throw std::logic_error("unreachable");
}

}  // namespace

SolveReport solve_semi_online(const StateFeedbackMatrix& sfm, Optimality level,
                              const SolveOptions& opts) {
    if (sfm.empty()) return {};
    const IdncGraph g = IdncGraph::from_conflicts(ConflictMatrix::from_sfm(sfm));
    const std::vector<int> targets = sfm.targets();
    Collection c = semi_online_collection(g, level, targets, opts);
    return finish_report(order_collection(std::move(c), targets), targets);
}

CodingSet fully_online_set(const StateFeedbackMatrix& sfm, Optimality level,
                           const SolveOptions& opts) {
    if (sfm.empty()) return 0;
    const IdncGraph g = IdncGraph::from_conflicts(ConflictMatrix::from_sfm(sfm));
    const std::vector<int> targets = sfm.targets();
    switch (level) {
        case Optimality::Optimal: {
            const std::vector<CodingSet> cliques = enumerate_maximal_cliques(g);
            const Collection chosen = order_collection(
                optimal_selected_collection(cliques, g.size(), targets, opts), targets);
            return chosen.sets.front();
        }
        case Optimality::Hybrid: {
            // the maximal coding set targeting the most receivers
            const std::vector<CodingSet> cliques = enumerate_maximal_cliques(g);
            CodingSet best = 0;
            long best_served = -1;
            for (CodingSet s : cliques) {
                long served = 0;
                for_each_packet(s, [&](int k) { served += targets[k]; });
                if (served > best_served ||
                    (served == best_served && set_lex_less(s, best))) {
                    best = s;
                    best_served = served;
                }
            }
            return best;
        }
        case Optimality::Heuristic:
            return heuristic_max_clique(g);
    }
    throw std::logic_error("unreachable");
}

SolveReport solve_fully_online(const StateFeedbackMatrix& sfm, Optimality level,
                               const SolveOptions& opts) {
    if (sfm.empty()) return {};
    const std::vector<int> targets = sfm.targets();
    const int n_packets = sfm.packets();

    std::vector<CodingSet> wants(sfm.rows().begin(), sfm.rows().end());
    std::vector<CodingSet> emitted;
    while (true) {
        CodingSet remaining = 0;
        for (CodingSet w : wants) remaining |= w;
        if (remaining == 0) break;

        const StateFeedbackMatrix view = StateFeedbackMatrix::reduce(wants, n_packets);
        CodingSet view_set = fully_online_set(view, level, opts);
        // map back to session packet indices
        CodingSet session_set = 0;
        for_each_packet(view_set, [&](int j) {
            session_set |= packet_bit(view.packet_ids()[j]);
        });
        emitted.push_back(session_set);

        // erasure-free delivery: every targeted receiver decodes
        for (CodingSet& w : wants) {
            const Classification cls = classify_packet(session_set, w);
            if (cls.kind == Decodability::InstantlyDecodable) w &= ~packet_bit(cls.packet);
        }
    }
    return finish_report(make_collection(std::move(emitted), n_packets), targets);
}

}  // namespace idnc
