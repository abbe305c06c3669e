#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace idnc::cli {

enum class Command { Solve, Bounds, Simulate, Sweep };

enum class SweepKind { Bounds, Schemes };

// Fully validated invocation; produced by parse_args, consumed by run.
struct ExperimentSpec {
    Command command = Command::Solve;

    std::string sfm_path;     // solve, bounds (file input)
    std::string out_path;     // empty = stdout
    std::string format;       // "json" or "csv" (defaulted per command)

    std::string scheme = "optimal";    // solve: optimal|hybrid|heuristic
    std::string feedback = "semi";     // solve: semi|fully

    int k = 0;                // bounds/sweep: packet count
    long m0 = -1;             // bounds: coding opportunities of the random instance
    std::string mode = "exact";  // bounds: exact|heuristic

    int kt = 0;               // simulate/sweep
    std::vector<int> nt;      // simulate: one value; sweep: list
    double pe = -1.0;
    std::vector<double> pe_list;  // sweep schemes
    long trials = 0;
    std::vector<long> m0_list;    // sweep bounds
    std::optional<std::uint64_t> seed;
    std::string sim_scheme;   // simulate: scheme name or "all"
    SweepKind sweep_kind = SweepKind::Bounds;
    int threads = 0;          // 0 = hardware concurrency

    std::optional<double> estimate_pe;  // bounds: adds conflict/chromatic estimates
    std::optional<int> estimate_nt;
};

// Parses argv (without the program name). Throws UsageError on bad input.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

ExperimentSpec parse_args(const std::vector<std::string>& argv);

// Executes a spec. Returns 0 on success, 2 when a solver budget is
// exceeded, 3 on I/O failure.
int run(const ExperimentSpec& spec);

// Full entry point: parse + run, mapping UsageError to a nonzero exit.
int main_entry(int argc, const char* const* argv);

}  // namespace idnc::cli
