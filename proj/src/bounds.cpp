#include "idnc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace idnc {

namespace {

void check_m0(int k, long m0) {
    if (k < 1) throw std::invalid_argument("bounds: need at least one packet");
    const long pairs = static_cast<long>(k) * (k - 1) / 2;
    if (m0 < 0 || m0 > pairs)
        throw std::invalid_argument("bounds: m0=" + std::to_string(m0) +
                                    " out of range [0," + std::to_string(pairs) + "]");
}

// pairs inside a balanced partition of k items into p groups
long balanced_pair_cost(int k, int p) {
    const int q = k / p;
    const int r = k % p;
    auto pairs = [](long s) { return s * (s - 1) / 2; };
    return r * pairs(q + 1) + (p - r) * pairs(q);
}

}  // namespace

int loose_upper_bound(int k, long m0) {
    check_m0(k, m0);
    int value = k;
    long band = k - 1;
    long remaining = m0;
    while (remaining > 0) {
        --value;
        remaining -= band;
        --band;
    }
    return value;
}

int loose_lower_bound(int k, long m0) {
    check_m0(k, m0);
    for (int p = 1; p <= k; ++p)
        if (balanced_pair_cost(k, p) <= m0) return p;
    return k;
}

int geller_lower_bound(int k, long m0) {
    check_m0(k, m0);
    const long num = static_cast<long>(k) * k;
    const long den = k + 2 * m0;
    return static_cast<int>((num + den - 1) / den);
}

ThroughputBounds tight_transmission_bounds(const IdncGraph& g, CliqueFinder mode,
                                           const EnumerationOptions& opts) {
    const IdncGraph gc = g.complement();
    ThroughputBounds b;
    b.mode = mode;
    const long m0 = g.edge_count();
    b.loose_lower = loose_lower_bound(g.size(), m0);
    b.loose_upper = loose_upper_bound(g.size(), m0);
    const CodingSet conflict_clique = mode == CliqueFinder::Exact
                                          ? exact_max_clique(gc, opts)
                                          : heuristic_max_clique(gc);
    b.tight_lower = set_size(conflict_clique);
    b.tight_upper = partition_clique_cover(g, mode, opts).size();
    return b;
}

Rational delay_of_profile(std::span<const long> tc) {
    long num = 0;
    long den = 0;
    for (std::size_t u = 0; u < tc.size(); ++u) {
        num += static_cast<long>(u + 1) * tc[u];
        den += tc[u];
    }
    if (den == 0) return Rational(0);
    return Rational(num, den);
}

std::pair<Rational, Rational> loose_delay_bounds(int k, long m0,
                                                 std::span<const int> targets) {
    if (static_cast<int>(targets.size()) != k)
        throw std::invalid_argument("loose_delay_bounds: targets size mismatch");

    std::vector<int> sorted(targets.begin(), targets.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<int>());

    const int u_low = loose_lower_bound(k, m0);
    std::vector<long> profile(u_low, 0);
    for (int i = 0; i < k - u_low + 1; ++i) profile[0] += sorted[i];
    for (int u = 1; u < u_low; ++u) profile[u] = sorted[k - u_low + u];
    const Rational lower = delay_of_profile(profile);

    const int u_high = loose_upper_bound(k, m0);
    const Rational upper = Rational(u_high + 1, 2);
    return {lower, upper};
}

TightDelayBounds tight_delay_bounds(const IdncGraph& g, std::span<const int> targets,
                                    CliqueFinder mode, const EnumerationOptions& opts) {
    const int k = g.size();
    if (static_cast<int>(targets.size()) != k)
        throw std::invalid_argument("tight_delay_bounds: targets size mismatch");

    // lower: a largest set of mutually conflicting packets must occupy
    // distinct slots; everything else rides with the first of them
    const IdncGraph gc = g.complement();
    CodingSet clique = 0;
    if (mode == CliqueFinder::Exact) {
        // among maximum cliques prefer the largest target profile
        // (first element, then the rest), then the lexicographic set
        const std::vector<CodingSet> all = enumerate_maximal_cliques(gc, opts);
        int best_size = 0;
        std::vector<int> best_profile;
        for (CodingSet c : all) {
            if (set_size(c) < best_size) continue;
            std::vector<int> profile;
            for_each_packet(c, [&](int v) { profile.push_back(targets[v]); });
            std::sort(profile.begin(), profile.end(), std::greater<int>());
            const bool better = set_size(c) > best_size || profile > best_profile ||
                                (profile == best_profile && set_lex_less(c, clique));
            if (clique == 0 || better) {
                clique = c;
                best_size = set_size(c);
                best_profile = std::move(profile);
            }
        }
    } else {
        clique = heuristic_max_clique(gc);
    }

    std::vector<int> clique_targets;
    for_each_packet(clique, [&](int v) { clique_targets.push_back(targets[v]); });
    std::sort(clique_targets.begin(), clique_targets.end(), std::greater<int>());

    long outside = 0;
    for (int v = 0; v < k; ++v)
        if (!set_contains(clique, v)) outside += targets[v];

    std::vector<long> low_profile(clique_targets.size());
    low_profile[0] = clique_targets[0] + outside;
    for (std::size_t u = 1; u < clique_targets.size(); ++u)
        low_profile[u] = clique_targets[u];

    TightDelayBounds out;
    out.lower = delay_of_profile(low_profile);

    const Collection partition =
        order_collection(partition_clique_cover(g, mode, opts), targets);
    out.tc_profile = residual_profile(partition, targets);
    out.upper = erasure_free_delay(partition, targets);
    return out;
}

double conflict_probability(double pe, int n_total) {
    if (pe < 0.0 || pe > 1.0) throw std::invalid_argument("conflict_probability: bad pe");
    if (n_total < 0) throw std::invalid_argument("conflict_probability: bad receiver count");
    return 1.0 - std::pow(1.0 - pe * pe, n_total);
}

double random_graph_transmission_estimate(int k_total, double pc, double log_base) {
    if (k_total < 2) throw std::invalid_argument("transmission estimate: need k_total >= 2");
    if (pc < 0.0 || pc >= 1.0)
        throw std::invalid_argument("transmission estimate: pc must be in [0,1)");
    if (pc == 0.0) return 0.0;
    const double scale = log_base > 0.0 ? std::log(log_base) : 1.0;
    const double numerator = std::log(1.0 / (1.0 - pc)) / scale;
    const double log_k = std::log(static_cast<double>(k_total)) / scale;
    return 0.5 * numerator * static_cast<double>(k_total) / log_k;
}

}  // namespace idnc
