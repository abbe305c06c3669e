#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "idnc/model.hpp"
#include "idnc/rational.hpp"
#include "idnc/solver.hpp"

namespace idnc {

enum class Feedback { Semi, Fully };

// One of the seven simulated schemes: {optimal,hybrid,heuristic} x
// {semi,fully} plus the rlnc reference.
struct SchemeId {
    bool rlnc = false;
    Optimality optimality = Optimality::Optimal;
    Feedback feedback = Feedback::Semi;

    std::string name() const;
    static SchemeId parse(const std::string& text);
    static std::vector<SchemeId> all();

    friend bool operator==(const SchemeId& a, const SchemeId& b) {
        if (a.rlnc != b.rlnc) return false;
        if (a.rlnc) return true;
        return a.optimality == b.optimality && a.feedback == b.feedback;
    }
};

struct ChannelConfig {
    double erasure_prob = 0.0;  // must stay below 1, or sessions never finish
    std::uint64_t seed = 0;
    // Reserved hook for non-homogeneous links; empty means homogeneous.
    std::vector<double> per_receiver_overrides;
};

struct SessionConfig {
    int k_total = 0;
    int n_total = 0;
    SchemeId scheme;
    ChannelConfig channel;
    SolveOptions solve;

    void validate() const;
};

struct RoundTrace {
    int round = 0;
    std::vector<CodingSet> sets;             // session packet indices
    std::vector<std::uint64_t> erasures;     // per slot, bit n = receiver n erased
};

struct SimOutcome {
    long coded_transmissions = 0;
    Rational avg_decoding_delay;  // over coded-phase slots, Eq-style accounting
    long demand_count = 0;        // demands outstanding after the systematic phase
    std::vector<RoundTrace> trace;
};

// Broadcast every packet once uncoded; the returned matrix holds the losses
// with all-zero rows/columns dropped (empty when nothing was lost).
StateFeedbackMatrix run_systematic_phase(const SessionConfig& cfg, std::mt19937_64& rng);

// Coded transmissions until every demand is met. Semi-online solves once per
// round and transmits the whole ordered collection before the next feedback;
// fully-online re-solves after every slot. Receivers decode instantly or
// discard; they never buffer coded data.
SimOutcome run_coded_phase(const StateFeedbackMatrix& sfm, const SessionConfig& cfg,
                           std::mt19937_64& rng);

// Idealized dense-coding reference: every received coded packet counts, a
// receiver finishes after as many successful receptions as it has losses,
// and all its packets are booked at its own completion slot.
SimOutcome run_rlnc_coded_phase(const StateFeedbackMatrix& sfm, const SessionConfig& cfg,
                                std::mt19937_64& rng);
SimOutcome run_rlnc_baseline(const SessionConfig& cfg, std::mt19937_64& rng);

// Full session for the configured scheme, seeded from cfg.channel.seed.
SimOutcome run_session(const SessionConfig& cfg);

// --- Monte Carlo harnesses -------------------------------------------------

// Uniformly random conflict state with exactly m0 coding opportunities
// (zeros) among the k(k-1)/2 pair entries.
ConflictMatrix random_conflict_matrix(int k, long m0, std::mt19937_64& rng);

struct BoundsPointStats {
    long m0 = 0;
    long trials = 0;
    long resampled = 0;  // budget-exceeded trials that were redrawn

    double mean_u_opt = 0, se_u_opt = 0;
    double mean_u_tight_lower = 0, se_u_tight_lower = 0;
    double mean_u_tight_upper = 0, se_u_tight_upper = 0;
    int u_loose_lower = 0;
    int u_loose_upper = 0;
    int u_geller = 0;

    // delay of the transmitted (score-selected) solution, and the smallest
    // delay any minimum collection can reach
    double mean_d_opt = 0, se_d_opt = 0;
    double mean_d_best = 0, se_d_best = 0;
    double mean_d_tight_lower = 0, se_d_tight_lower = 0;
    double mean_d_tight_upper = 0, se_d_tight_upper = 0;
    double mean_d_loose_lower = 0, se_d_loose_lower = 0;
    double d_loose_upper = 0;  // depends only on (k, m0)
};

struct BoundsMcReport {
    int k = 0;
    long trials = 0;
    std::uint64_t seed = 0;
    std::vector<BoundsPointStats> points;
};

// Per m0: draw conflict states uniformly with exactly m0 coding
// opportunities, solve exactly, evaluate every bound, and average. Target
// counts are drawn uniformly on [1, k] per trial. Trials run on per-trial
// streams, so thread count never changes the aggregates.
BoundsMcReport monte_carlo_bounds(int k, std::span<const long> m0_sweep, long trials,
                                  std::uint64_t seed, int threads = 1,
                                  const SolveOptions& solve = {});

struct SchemePointStats {
    SchemeId scheme;
    int nt = 0;
    double pe = 0;
    long trials = 0;
    double mean_tx = 0, se_tx = 0;
    double mean_delay = 0, se_delay = 0;
    long delay_trials = 0;  // sessions that had any demand to decode
};

// Per receiver count: full sessions for each scheme with common random
// numbers (one channel seed per trial shared by every scheme).
std::vector<SchemePointStats> monte_carlo_schemes(int k_total, std::span<const int> nt_sweep,
                                                  double pe, long trials, std::uint64_t seed,
                                                  int threads = 1,
                                                  std::span<const SchemeId> schemes = {},
                                                  const SolveOptions& solve = {});

}  // namespace idnc
