#include "idnc/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "idnc/bounds.hpp"
#include "idnc/cliques.hpp"
#include "idnc/errors.hpp"
#include "idnc/rng.hpp"

namespace idnc {

std::string SchemeId::name() const {
    if (rlnc) return "rlnc";
    std::string base;
    switch (optimality) {
        case Optimality::Optimal: base = "optimal"; break;
        case Optimality::Hybrid: base = "hybrid"; break;
        case Optimality::Heuristic: base = "heuristic"; break;
    }
    return base + (feedback == Feedback::Semi ? "-semi" : "-fully");
}

SchemeId SchemeId::parse(const std::string& text) {
    for (const SchemeId& s : all())
        if (s.name() == text) return s;
    throw std::invalid_argument("unknown scheme '" + text + "'");
}

std::vector<SchemeId> SchemeId::all() {
    std::vector<SchemeId> out;
    for (Optimality o : {Optimality::Optimal, Optimality::Hybrid, Optimality::Heuristic})
        for (Feedback f : {Feedback::Semi, Feedback::Fully})
            out.push_back(SchemeId{false, o, f});
    out.push_back(SchemeId{true, Optimality::Optimal, Feedback::Semi});
    return out;
}

void SessionConfig::validate() const {
    if (k_total < 1 || k_total > kMaxPackets)
        throw std::invalid_argument("session: k_total must be in [1," +
                                    std::to_string(kMaxPackets) + "]");
    if (n_total < 1 || n_total > 64)
        throw std::invalid_argument("session: n_total must be in [1,64]");
    if (!(channel.erasure_prob >= 0.0 && channel.erasure_prob < 1.0))
        throw std::invalid_argument("session: erasure probability must be in [0,1)");
    if (!channel.per_receiver_overrides.empty() &&
        channel.per_receiver_overrides.size() != static_cast<std::size_t>(n_total))
        throw std::invalid_argument("session: per-receiver override size mismatch");
}

namespace {

double receiver_pe(const SessionConfig& cfg, int receiver) {
    if (!cfg.channel.per_receiver_overrides.empty())
        return cfg.channel.per_receiver_overrides[receiver];
    return cfg.channel.erasure_prob;
}

// One erasure draw per receiver, bit n set = receiver n lost this slot.
std::uint64_t draw_erasures(const SessionConfig& cfg, std::mt19937_64& rng) {
    std::uint64_t mask = 0;
    for (int n = 0; n < cfg.n_total; ++n)
        if (next_unit(rng) < receiver_pe(cfg, n)) mask |= std::uint64_t{1} << n;
    return mask;
}

}  // namespace

StateFeedbackMatrix run_systematic_phase(const SessionConfig& cfg, std::mt19937_64& rng) {
    cfg.validate();
    std::vector<CodingSet> lost(cfg.n_total, 0);
    for (int n = 0; n < cfg.n_total; ++n)
        for (int k = 0; k < cfg.k_total; ++k)
            if (next_unit(rng) < receiver_pe(cfg, n)) lost[n] |= packet_bit(k);
    return StateFeedbackMatrix::reduce(lost, cfg.k_total);
}

SimOutcome run_coded_phase(const StateFeedbackMatrix& sfm, const SessionConfig& cfg,
                           std::mt19937_64& rng) {
    cfg.validate();
    SimOutcome outcome;
    outcome.demand_count = sfm.total_demands();
    if (sfm.empty()) return outcome;

    DelayLedger ledger = DelayLedger::for_demands(sfm);
    std::vector<CodingSet> wants(sfm.rows().begin(), sfm.rows().end());
    const int n_receivers = sfm.receivers();

    int slot = 0;
    int round = 0;
    while (true) {
        CodingSet outstanding = 0;
        for (CodingSet w : wants) outstanding |= w;
        if (outstanding == 0) break;
        ++round;

        // sender view: current state with satisfied rows/columns dropped
        const StateFeedbackMatrix view =
            StateFeedbackMatrix::reduce(wants, sfm.packets());

        std::vector<CodingSet> to_send;
        if (cfg.scheme.feedback == Feedback::Semi) {
            const SolveReport report =
                solve_semi_online(view, cfg.scheme.optimality, cfg.solve);
            to_send = report.collection.sets;
        } else {
            to_send.push_back(fully_online_set(view, cfg.scheme.optimality, cfg.solve));
        }

        RoundTrace trace;
        trace.round = round;
        for (CodingSet view_set : to_send) {
            CodingSet session_set = 0;
            for_each_packet(view_set, [&](int j) {
                session_set |= packet_bit(view.packet_ids()[j]);
            });
            trace.sets.push_back(session_set);

            ++slot;
            const std::uint64_t erased = draw_erasures(cfg, rng);
            trace.erasures.push_back(erased);

            for (int n = 0; n < n_receivers; ++n) {
                const int orig = sfm.receiver_ids()[n];
                if ((erased >> orig) & 1) continue;
                const Classification cls = classify_packet(session_set, wants[n]);
                if (cls.kind == Decodability::NonInstantlyDecodable)
                    throw std::logic_error("coded set non-instantly decodable for a receiver");
                if (cls.kind != Decodability::InstantlyDecodable) continue;
                ledger.slots[n][cls.packet] = slot;
                wants[n] &= ~packet_bit(cls.packet);
            }
        }
        outcome.trace.push_back(std::move(trace));
    }
    outcome.coded_transmissions = slot;
    outcome.avg_decoding_delay = average_decoding_delay(ledger);
    return outcome;
}

SimOutcome run_rlnc_coded_phase(const StateFeedbackMatrix& sfm, const SessionConfig& cfg,
                                std::mt19937_64& rng) {
    cfg.validate();
    SimOutcome outcome;
    outcome.demand_count = sfm.total_demands();
    if (sfm.empty()) return outcome;

    const int n_receivers = sfm.receivers();
    std::vector<int> deficit(n_receivers);
    std::vector<int> completion(n_receivers, 0);
    for (int n = 0; n < n_receivers; ++n) deficit[n] = set_size(sfm.wants(n));

    int slot = 0;
    while (true) {
        bool open = false;
        for (int d : deficit)
            if (d > 0) open = true;
        if (!open) break;

        ++slot;
        const std::uint64_t erased = draw_erasures(cfg, rng);
        for (int n = 0; n < n_receivers; ++n) {
            if (deficit[n] == 0) continue;
            const int orig = sfm.receiver_ids()[n];
            if ((erased >> orig) & 1) continue;
            if (--deficit[n] == 0) completion[n] = slot;
        }
    }

    DelayLedger ledger = DelayLedger::for_demands(sfm);
    for (int n = 0; n < n_receivers; ++n)
        for_each_packet(sfm.wants(n), [&](int k) { ledger.slots[n][k] = completion[n]; });

    outcome.coded_transmissions = slot;
    outcome.avg_decoding_delay = average_decoding_delay(ledger);
    return outcome;
}

SimOutcome run_rlnc_baseline(const SessionConfig& cfg, std::mt19937_64& rng) {
    const StateFeedbackMatrix sfm = run_systematic_phase(cfg, rng);
    return run_rlnc_coded_phase(sfm, cfg, rng);
}

SimOutcome run_session(const SessionConfig& cfg) {
    std::mt19937_64 rng = make_stream(cfg.channel.seed, 0);
    if (cfg.scheme.rlnc) return run_rlnc_baseline(cfg, rng);
    const StateFeedbackMatrix sfm = run_systematic_phase(cfg, rng);
    return run_coded_phase(sfm, cfg, rng);
}

// --- Monte Carlo -----------------------------------------------------------

ConflictMatrix random_conflict_matrix(int k, long m0, std::mt19937_64& rng) {
    const std::size_t pairs = static_cast<std::size_t>(k) * (k - 1) / 2;
    std::vector<std::uint8_t> entries(pairs, 1);
    for (long i = 0; i < m0; ++i) entries[static_cast<std::size_t>(i)] = 0;
    for (std::size_t i = pairs; i > 1; --i) {
        const std::size_t j = next_below(rng, i);
        std::swap(entries[i - 1], entries[j]);
    }
    return ConflictMatrix(k, std::move(entries));
}

namespace {

struct MeanSe {
    double mean = 0;
    double se = 0;
};

MeanSe mean_se(std::span<const double> xs) {
    if (xs.empty()) return {};
    double sum = 0;
    for (double x : xs) sum += x;
    const double mean = sum / static_cast<double>(xs.size());
    if (xs.size() < 2) return {mean, 0.0};
    double ss = 0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double var = ss / static_cast<double>(xs.size() - 1);
    return {mean, std::sqrt(var / static_cast<double>(xs.size()))};
}

// Deterministic work-sharing: workers pull indices from an atomic counter
// and write into per-index slots; the reduction below runs in index order.
// The first exception thrown by any worker is rethrown after the join.
template <typename Fn>
void parallel_for(long count, int threads, Fn&& fn) {
    threads = std::max(1, threads);
    if (threads == 1 || count <= 1) {
        for (long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            while (!failed.load()) {
                const long i = next.fetch_add(1);
                if (i >= count) break;
                try {
                    fn(i);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    failed.store(true);
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

struct BoundsTrial {
    double u_opt, u_tlow, u_tup;
    double d_opt, d_best, d_tlow, d_tup, d_loose_low;
    bool resampled;
};

BoundsTrial bounds_trial(int k, long m0, std::uint64_t seed, std::uint64_t stream_base,
                         const SolveOptions& solve) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        if (attempt >= 16)
            throw BudgetExceededError("bounds trial: 16 consecutive budget failures");
        std::mt19937_64 rng = make_stream(seed, stream_base + attempt);
        const ConflictMatrix cm = random_conflict_matrix(k, m0, rng);
        const IdncGraph g = IdncGraph::from_conflicts(cm);

        std::vector<int> targets(k);
        for (int i = 0; i < k; ++i) targets[i] = next_int(rng, 1, k);

        try {
            const std::vector<CodingSet> cliques = enumerate_maximal_cliques(g);
            const std::vector<Collection> minima =
                optimal_minimum_collections(cliques, k, solve);

            const ThroughputBounds tb = tight_transmission_bounds(g, CliqueFinder::Exact);
            const TightDelayBounds db = tight_delay_bounds(g, targets, CliqueFinder::Exact);
            const auto [d_loose_low, d_loose_up] = loose_delay_bounds(k, m0, targets);
            (void)d_loose_up;

            BoundsTrial out;
            out.u_opt = static_cast<double>(minima.front().size());
            out.u_tlow = tb.tight_lower;
            out.u_tup = tb.tight_upper;
            const Collection chosen =
                order_collection(select_collection(minima, targets), targets);
            out.d_opt = erasure_free_delay(chosen, targets).value();
            out.d_best = best_collection_delay(minima, targets).value();
            out.d_tlow = db.lower.value();
            out.d_tup = db.upper.value();
            out.d_loose_low = d_loose_low.value();
            out.resampled = attempt > 0;
            return out;
        } catch (const BudgetExceededError&) {
            continue;  // redraw on the next attempt stream
        }
    }
}

}  // namespace

BoundsMcReport monte_carlo_bounds(int k, std::span<const long> m0_sweep, long trials,
                                  std::uint64_t seed, int threads,
                                  const SolveOptions& solve) {
    if (trials < 1) throw std::invalid_argument("monte_carlo_bounds: need trials >= 1");
    BoundsMcReport report;
    report.k = k;
    report.trials = trials;
    report.seed = seed;
    report.points.resize(m0_sweep.size());

    const long total = static_cast<long>(m0_sweep.size()) * trials;
    std::vector<BoundsTrial> results(total);
    parallel_for(total, threads, [&](long idx) {
        const long point = idx / trials;
        // 16 reserved stream slots per trial for resampling
        results[idx] = bounds_trial(k, m0_sweep[point], seed,
                                    static_cast<std::uint64_t>(idx) * 16, solve);
    });

    for (std::size_t p = 0; p < m0_sweep.size(); ++p) {
        BoundsPointStats& out = report.points[p];
        const long m0 = m0_sweep[p];
        out.m0 = m0;
        out.trials = trials;
        out.u_loose_lower = loose_lower_bound(k, m0);
        out.u_loose_upper = loose_upper_bound(k, m0);
        out.u_geller = geller_lower_bound(k, m0);
        out.d_loose_upper = (out.u_loose_upper + 1) / 2.0;

        std::vector<double> u_opt, u_tlow, u_tup, d_opt, d_best, d_tlow, d_tup, d_llow;
        for (long t = 0; t < trials; ++t) {
            const BoundsTrial& r = results[static_cast<long>(p) * trials + t];
            if (r.resampled) ++out.resampled;
            u_opt.push_back(r.u_opt);
            u_tlow.push_back(r.u_tlow);
            u_tup.push_back(r.u_tup);
            d_opt.push_back(r.d_opt);
            d_best.push_back(r.d_best);
            d_tlow.push_back(r.d_tlow);
            d_tup.push_back(r.d_tup);
            d_llow.push_back(r.d_loose_low);
        }
        const auto set = [](MeanSe m, double& mean, double& se) {
            mean = m.mean;
            se = m.se;
        };
        set(mean_se(u_opt), out.mean_u_opt, out.se_u_opt);
        set(mean_se(u_tlow), out.mean_u_tight_lower, out.se_u_tight_lower);
        set(mean_se(u_tup), out.mean_u_tight_upper, out.se_u_tight_upper);
        set(mean_se(d_opt), out.mean_d_opt, out.se_d_opt);
        set(mean_se(d_best), out.mean_d_best, out.se_d_best);
        set(mean_se(d_tlow), out.mean_d_tight_lower, out.se_d_tight_lower);
        set(mean_se(d_tup), out.mean_d_tight_upper, out.se_d_tight_upper);
        set(mean_se(d_llow), out.mean_d_loose_lower, out.se_d_loose_lower);
    }
    return report;
}

std::vector<SchemePointStats> monte_carlo_schemes(int k_total, std::span<const int> nt_sweep,
                                                  double pe, long trials, std::uint64_t seed,
                                                  int threads,
                                                  std::span<const SchemeId> schemes,
                                                  const SolveOptions& solve) {
    if (trials < 1) throw std::invalid_argument("monte_carlo_schemes: need trials >= 1");
    std::vector<SchemeId> scheme_list(schemes.begin(), schemes.end());
    if (scheme_list.empty()) scheme_list = SchemeId::all();

    struct TrialResult {
        double tx = 0;
        double delay = 0;
        bool has_delay = false;
    };
    const long per_point = trials;
    const long total = static_cast<long>(nt_sweep.size()) * per_point;
    std::vector<std::vector<TrialResult>> results(total);

    parallel_for(total, threads, [&](long idx) {
        const long point = idx / per_point;
        const long trial = idx % per_point;
        // one channel seed per (nt, trial), shared by every scheme
        std::uint64_t mix = seed ^ (0x9e3779b97f4a7c15ULL * (idx + 1));
        const std::uint64_t channel_seed = splitmix64(mix);

        std::vector<TrialResult> row(scheme_list.size());
        for (std::size_t s = 0; s < scheme_list.size(); ++s) {
            SessionConfig cfg;
            cfg.k_total = k_total;
            cfg.n_total = nt_sweep[point];
            cfg.scheme = scheme_list[s];
            cfg.channel.erasure_prob = pe;
            cfg.channel.seed = channel_seed;
            cfg.solve = solve;
            const SimOutcome outcome = run_session(cfg);
            row[s].tx = static_cast<double>(outcome.coded_transmissions);
            row[s].has_delay = outcome.demand_count > 0;
            row[s].delay = outcome.avg_decoding_delay.value();
        }
        (void)trial;
        results[idx] = std::move(row);
    });

    std::vector<SchemePointStats> out;
    for (std::size_t p = 0; p < nt_sweep.size(); ++p) {
        for (std::size_t s = 0; s < scheme_list.size(); ++s) {
            SchemePointStats stats;
            stats.scheme = scheme_list[s];
            stats.nt = nt_sweep[p];
            stats.pe = pe;
            stats.trials = trials;

            std::vector<double> txs, delays;
            for (long t = 0; t < per_point; ++t) {
                const TrialResult& r = results[static_cast<long>(p) * per_point + t][s];
                txs.push_back(r.tx);
                if (r.has_delay) delays.push_back(r.delay);
            }
            const MeanSe tx = mean_se(txs);
            stats.mean_tx = tx.mean;
            stats.se_tx = tx.se;
            const MeanSe dl = mean_se(delays);
            stats.mean_delay = dl.mean;
            stats.se_delay = dl.se;
            stats.delay_trials = static_cast<long>(delays.size());
            out.push_back(stats);
        }
    }
    return out;
}

}  // namespace idnc
