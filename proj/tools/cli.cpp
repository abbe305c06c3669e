#include "cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "idnc/bounds.hpp"
#include "idnc/errors.hpp"
#include "idnc/model.hpp"
#include "idnc/rng.hpp"
#include "idnc/sfm_io.hpp"
#include "idnc/sim.hpp"
#include "idnc/solver.hpp"

namespace idnc::cli {

namespace {

struct RawArgs {
    std::string seed_text;  // presence-checked, then parsed to uint64
};

void build_app(CLI::App& app, ExperimentSpec& spec, RawArgs& raw) {
    app.description("Instantly decodable network coding toolkit");
    app.require_subcommand(1);

    auto* solve = app.add_subcommand("solve", "Coding solution for a demand matrix");
    solve->add_option("--sfm", spec.sfm_path, "demand matrix file (.json or .csv)")
        ->required();
    solve->add_option("--scheme", spec.scheme, "optimal|hybrid|heuristic")
        ->check(CLI::IsMember({"optimal", "hybrid", "heuristic"}))
        ->capture_default_str();
    solve->add_option("--feedback", spec.feedback, "semi|fully")
        ->check(CLI::IsMember({"semi", "fully"}))
        ->capture_default_str();
    solve->add_option("--out", spec.out_path, "output file (default stdout)");

    auto* bounds = app.add_subcommand("bounds", "Throughput and delay bounds");
    bounds->add_option("--sfm", spec.sfm_path, "demand matrix file");
    bounds->add_option("--k", spec.k, "packet count of a random instance");
    bounds->add_option("--m0", spec.m0, "coding opportunities of the random instance");
    bounds->add_option("--seed", raw.seed_text, "RNG seed (random instance)");
    bounds->add_option("--mode", spec.mode, "exact|heuristic")
        ->check(CLI::IsMember({"exact", "heuristic"}))
        ->capture_default_str();
    bounds->add_option("--pe", spec.estimate_pe, "erasure probability for the estimates");
    bounds->add_option("--nt", spec.estimate_nt, "receiver count for the estimates");
    bounds->add_option("--out", spec.out_path, "output file (default stdout)");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo scheme evaluation");
    simulate->add_option("--kt", spec.kt, "total packets")->required();
    simulate->add_option("--nt", spec.nt, "receiver counts (comma separated)")
        ->required()
        ->delimiter(',');
    simulate->add_option("--pe", spec.pe, "erasure probability")->required();
    simulate->add_option("--scheme", spec.sim_scheme, "scheme name or 'all'")
        ->capture_default_str();
    simulate->add_option("--trials", spec.trials, "Monte Carlo trials")->required();
    simulate->add_option("--seed", raw.seed_text, "RNG seed")->required();
    simulate->add_option("--threads", spec.threads, "worker threads (0 = auto)");
    simulate->add_option("--out", spec.out_path, "output file (default stdout)");

    auto* sweep = app.add_subcommand("sweep", "Parameter sweeps as CSV");
    sweep->add_option("--kind", spec.sweep_kind, "bounds|schemes")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, SweepKind>{{"bounds", SweepKind::Bounds},
                                             {"schemes", SweepKind::Schemes}}))
        ->required();
    sweep->add_option("--k", spec.k, "packet count (bounds sweep)");
    sweep->add_option("--m0s", spec.m0_list, "coding-opportunity points (bounds sweep)")
        ->delimiter(',');
    sweep->add_option("--kt", spec.kt, "total packets (schemes sweep)");
    sweep->add_option("--nt", spec.nt, "receiver counts (schemes sweep)")->delimiter(',');
    sweep->add_option("--pe", spec.pe_list, "erasure probabilities (schemes sweep)")
        ->delimiter(',');
    sweep->add_option("--trials", spec.trials, "Monte Carlo trials")->required();
    sweep->add_option("--seed", raw.seed_text, "RNG seed")->required();
    sweep->add_option("--threads", spec.threads, "worker threads (0 = auto)");
    sweep->add_option("--out", spec.out_path, "output file (default stdout)");
}

std::uint64_t parse_seed(const std::string& text) {
    try {
        std::size_t used = 0;
        const std::uint64_t value = std::stoull(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        return value;
    } catch (const std::exception&) {
        throw UsageError("invalid seed '" + text + "'");
    }
}

void finalize(ExperimentSpec& spec, const CLI::App& app, const RawArgs& raw) {
    if (!raw.seed_text.empty()) spec.seed = parse_seed(raw.seed_text);

    const CLI::App* sub = app.get_subcommands().at(0);
    const std::string name = sub->get_name();
    if (name == "solve") {
        spec.command = Command::Solve;
        spec.format = "json";
    } else if (name == "bounds") {
        spec.command = Command::Bounds;
        spec.format = "json";
        const bool from_file = !spec.sfm_path.empty();
        const bool from_random = spec.k > 0 || spec.m0 >= 0;
        if (from_file == from_random)
            throw UsageError("bounds: give either --sfm or --k/--m0/--seed");
        if (from_random) {
            if (spec.k < 1 || spec.k > kMaxPackets)
                throw UsageError("bounds: --k must be in [1," + std::to_string(kMaxPackets) +
                                 "]");
            const long pairs = static_cast<long>(spec.k) * (spec.k - 1) / 2;
            if (spec.m0 < 0 || spec.m0 > pairs)
                throw UsageError("bounds: --m0 must be in [0," + std::to_string(pairs) + "]");
            if (!spec.seed) throw UsageError("bounds: random instance requires --seed");
        }
        if (spec.estimate_pe && !(*spec.estimate_pe >= 0.0 && *spec.estimate_pe <= 1.0))
            throw UsageError("bounds: --pe must be in [0,1]");
        if (spec.estimate_pe && !spec.estimate_nt)
            throw UsageError("bounds: --pe requires --nt for the estimates");
    } else if (name == "simulate") {
        spec.command = Command::Simulate;
        spec.format = "csv";
        if (spec.sim_scheme.empty()) spec.sim_scheme = "all";
        if (spec.kt < 1 || spec.kt > kMaxPackets)
            throw UsageError("simulate: --kt must be in [1," + std::to_string(kMaxPackets) +
                             "]");
        for (int nt : spec.nt)
            if (nt < 1 || nt > 64) throw UsageError("simulate: --nt values must be in [1,64]");
        if (!(spec.pe >= 0.0 && spec.pe < 1.0))
            throw UsageError("simulate: --pe must be in [0,1)");
        if (spec.trials < 1) throw UsageError("simulate: --trials must be positive");
        if (spec.sim_scheme != "all") {
            try {
                SchemeId::parse(spec.sim_scheme);
            } catch (const std::invalid_argument& e) {
                throw UsageError(std::string("simulate: ") + e.what());
            }
        }
    } else {
        spec.command = Command::Sweep;
        spec.format = "csv";
        if (spec.trials < 1) throw UsageError("sweep: --trials must be positive");
        if (spec.sweep_kind == SweepKind::Bounds) {
            if (spec.k == 0) spec.k = 15;
            if (spec.k < 1 || spec.k > kMaxPackets)
                throw UsageError("sweep: --k must be in [1," + std::to_string(kMaxPackets) +
                                 "]");
            const long pairs = static_cast<long>(spec.k) * (spec.k - 1) / 2;
            if (spec.m0_list.empty())
                for (long m0 = 0; m0 <= pairs; m0 += 10) spec.m0_list.push_back(m0);
            for (long m0 : spec.m0_list)
                if (m0 < 0 || m0 > pairs)
                    throw UsageError("sweep: m0 values must be in [0," +
                                     std::to_string(pairs) + "]");
        } else {
            if (spec.kt == 0) spec.kt = 15;
            if (spec.kt < 1 || spec.kt > kMaxPackets)
                throw UsageError("sweep: --kt must be in [1," + std::to_string(kMaxPackets) +
                                 "]");
            if (spec.nt.empty()) spec.nt = {5, 15, 25, 35, 45};
            for (int nt : spec.nt)
                if (nt < 1 || nt > 64) throw UsageError("sweep: --nt values must be in [1,64]");
            if (spec.pe_list.empty()) spec.pe_list = {0.05, 0.2};
            for (double pe : spec.pe_list)
                if (!(pe >= 0.0 && pe < 1.0))
                    throw UsageError("sweep: --pe values must be in [0,1)");
        }
    }
}

std::string fmt6(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", x);
    return buf;
}

void write_output(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp + "' for writing");
        out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
        if (!out) throw IoError("short write to '" + tmp + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot move '" + tmp + "' to '" + path + "': " + ec.message());
}

nlohmann::json rational_json(const Rational& r) {
    return {{"num", r.num()}, {"den", r.den()}, {"value", r.value()}};
}

nlohmann::json sets_json(const std::vector<CodingSet>& sets) {
    nlohmann::json out = nlohmann::json::array();
    for (CodingSet s : sets) {
        nlohmann::json one = nlohmann::json::array();
        for (int k : set_members(s)) one.push_back(k + 1);  // 1-based in output
        out.push_back(std::move(one));
    }
    return out;
}

Optimality parse_optimality(const std::string& text) {
    if (text == "optimal") return Optimality::Optimal;
    if (text == "hybrid") return Optimality::Hybrid;
    return Optimality::Heuristic;
}

SolveOptions solve_options_from_env() {
    SolveOptions opts;
    if (const char* env = std::getenv("IDNC_BUDGET")) {
        try {
            opts.max_candidates = std::stoull(env);
        } catch (const std::exception&) {
            throw UsageError(std::string("IDNC_BUDGET is not a number: ") + env);
        }
    }
    return opts;
}

int effective_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::string run_solve(const ExperimentSpec& spec, const SolveOptions& solve) {
    const StateFeedbackMatrix sfm = read_sfm_file(spec.sfm_path);
    nlohmann::json out;
    out["command"] = "solve";
    out["scheme"] = spec.scheme;
    out["feedback"] = spec.feedback;
    out["receivers"] = sfm.receivers();
    out["packets"] = sfm.packets();
    if (sfm.empty()) {
        out["complete"] = true;
        out["u_idnc"] = 0;
    } else {
        const Optimality level = parse_optimality(spec.scheme);
        const SolveReport report = spec.feedback == "semi"
                                       ? solve_semi_online(sfm, level, solve)
                                       : solve_fully_online(sfm, level, solve);
        out["complete"] = false;
        out["u_idnc"] = report.transmissions;
        out["d_idnc"] = rational_json(report.avg_delay);
        out["collection"] = sets_json(report.collection.sets);
        out["diversity"] = report.collection.diversity;
        out["first_slot"] = report.first_slot;
        out["selection_score"] = report.selection_score;
    }
    return out.dump(2) + "\n";
}

std::string run_bounds(const ExperimentSpec& spec) {
    nlohmann::json out;
    out["command"] = "bounds";
    out["mode"] = spec.mode;

    IdncGraph g;
    std::vector<int> targets;
    if (!spec.sfm_path.empty()) {
        const StateFeedbackMatrix sfm = read_sfm_file(spec.sfm_path);
        if (sfm.empty()) {
            out["complete"] = true;
            return out.dump(2) + "\n";
        }
        g = IdncGraph::from_conflicts(ConflictMatrix::from_sfm(sfm));
        targets = sfm.targets();
        out["source"] = "sfm";
    } else {
        std::mt19937_64 rng = make_stream(*spec.seed, 0);
        const ConflictMatrix cm = random_conflict_matrix(spec.k, spec.m0, rng);
        g = IdncGraph::from_conflicts(cm);
        targets.resize(spec.k);
        for (int i = 0; i < spec.k; ++i) targets[i] = next_int(rng, 1, spec.k);
        out["source"] = "random";
        out["seed"] = *spec.seed;
    }

    const int k = g.size();
    const long m0 = g.edge_count();
    const CliqueFinder mode =
        spec.mode == "exact" ? CliqueFinder::Exact : CliqueFinder::Heuristic;

    out["k"] = k;
    out["m0"] = m0;
    out["targets"] = targets;
    const ThroughputBounds tb = tight_transmission_bounds(g, mode);
    out["u_loose_lower"] = tb.loose_lower;
    out["u_loose_upper"] = tb.loose_upper;
    out["u_geller_lower"] = geller_lower_bound(k, m0);
    out["u_tight_lower"] = tb.tight_lower;
    out["u_tight_upper"] = tb.tight_upper;
    const auto [d_loose_low, d_loose_up] = loose_delay_bounds(k, m0, targets);
    const TightDelayBounds db = tight_delay_bounds(g, targets, mode);
    out["d_loose_lower"] = rational_json(d_loose_low);
    out["d_loose_upper"] = rational_json(d_loose_up);
    out["d_tight_lower"] = rational_json(db.lower);
    out["d_tight_upper"] = rational_json(db.upper);

    if (spec.estimate_pe) {
        const double pc = conflict_probability(*spec.estimate_pe, *spec.estimate_nt);
        out["conflict_probability"] = pc;
        if (pc < 1.0 && k >= 2)
            out["transmission_estimate"] = random_graph_transmission_estimate(k, pc);
    }
    return out.dump(2) + "\n";
}

std::string schemes_csv(const std::vector<SchemePointStats>& rows) {
    std::string csv = "scheme,nt,pe,trials,mean_tx,se_tx,mean_delay,se_delay\n";
    for (const SchemePointStats& r : rows) {
        csv += r.scheme.name() + "," + std::to_string(r.nt) + "," + fmt6(r.pe) + "," +
               std::to_string(r.trials) + "," + fmt6(r.mean_tx) + "," + fmt6(r.se_tx) + "," +
               fmt6(r.mean_delay) + "," + fmt6(r.se_delay) + "\n";
    }
    return csv;
}

std::string run_simulate(const ExperimentSpec& spec, const SolveOptions& solve) {
    std::vector<SchemeId> schemes;
    if (spec.sim_scheme == "all")
        schemes = SchemeId::all();
    else
        schemes.push_back(SchemeId::parse(spec.sim_scheme));
    const std::vector<SchemePointStats> rows =
        monte_carlo_schemes(spec.kt, spec.nt, spec.pe, spec.trials, *spec.seed,
                            effective_threads(spec.threads), schemes, solve);
    return schemes_csv(rows);
}

std::string run_sweep(const ExperimentSpec& spec, const SolveOptions& solve) {
    if (spec.sweep_kind == SweepKind::Schemes) {
        std::string csv = "scheme,nt,pe,trials,mean_tx,se_tx,mean_delay,se_delay\n";
        for (double pe : spec.pe_list) {
            const std::vector<SchemePointStats> rows =
                monte_carlo_schemes(spec.kt, spec.nt, pe, spec.trials, *spec.seed,
                                    effective_threads(spec.threads), {}, solve);
            std::string block = schemes_csv(rows);
            csv += block.substr(block.find('\n') + 1);  // drop repeated header
        }
        return csv;
    }

    const BoundsMcReport report =
        monte_carlo_bounds(spec.k, spec.m0_list, spec.trials, *spec.seed,
                           effective_threads(spec.threads), solve);
    std::string csv =
        "k,m0,trials,resampled,mean_u_idnc,se_u_idnc,mean_u_tight_lower,se_u_tight_lower,"
        "mean_u_tight_upper,se_u_tight_upper,u_loose_lower,u_loose_upper,u_geller,"
        "mean_d_idnc,se_d_idnc,mean_d_idnc_best,se_d_idnc_best,mean_d_tight_lower,"
        "se_d_tight_lower,mean_d_tight_upper,se_d_tight_upper,mean_d_loose_lower,"
        "se_d_loose_lower,d_loose_upper\n";
    for (const BoundsPointStats& p : report.points) {
        csv += std::to_string(report.k) + "," + std::to_string(p.m0) + "," +
               std::to_string(p.trials) + "," + std::to_string(p.resampled) + "," +
               fmt6(p.mean_u_opt) + "," + fmt6(p.se_u_opt) + "," +
               fmt6(p.mean_u_tight_lower) + "," + fmt6(p.se_u_tight_lower) + "," +
               fmt6(p.mean_u_tight_upper) + "," + fmt6(p.se_u_tight_upper) + "," +
               std::to_string(p.u_loose_lower) + "," + std::to_string(p.u_loose_upper) + "," +
               std::to_string(p.u_geller) + "," + fmt6(p.mean_d_opt) + "," +
               fmt6(p.se_d_opt) + "," + fmt6(p.mean_d_best) + "," + fmt6(p.se_d_best) +
               "," + fmt6(p.mean_d_tight_lower) + "," +
               fmt6(p.se_d_tight_lower) + "," + fmt6(p.mean_d_tight_upper) + "," +
               fmt6(p.se_d_tight_upper) + "," + fmt6(p.mean_d_loose_lower) + "," +
               fmt6(p.se_d_loose_lower) + "," + fmt6(p.d_loose_upper) + "\n";
    }
    return csv;
}

}  // namespace

ExperimentSpec parse_args(const std::vector<std::string>& argv) {
    ExperimentSpec spec;
    RawArgs raw;
    CLI::App app;
    build_app(app, spec, raw);
    try {
        std::vector<std::string> reversed(argv.rbegin(), argv.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    finalize(spec, app, raw);
    return spec;
}

int run(const ExperimentSpec& spec) {
    try {
        const SolveOptions solve = solve_options_from_env();
        std::string payload;
        switch (spec.command) {
            case Command::Solve: payload = run_solve(spec, solve); break;
            case Command::Bounds: payload = run_bounds(spec); break;
            case Command::Simulate: payload = run_simulate(spec, solve); break;
            case Command::Sweep: payload = run_sweep(spec, solve); break;
        }
        write_output(spec.out_path, payload);
        return 0;
    } catch (const BudgetExceededError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

int main_entry(int argc, const char* const* argv) {
    ExperimentSpec spec;
    RawArgs raw;
    CLI::App app;
    build_app(app, spec, raw);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    try {
        finalize(spec, app, raw);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return run(spec);
}

}  // namespace idnc::cli
