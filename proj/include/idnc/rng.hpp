#pragma once

#include <cstdint>
#include <random>

namespace idnc {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Replayable substream for (seed, stream). Streams with distinct ids never
// share state, so per-trial streams give identical aggregates whether trials
// run serially or in parallel.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ (0xd1b54a32d192ed03ULL * (stream + 1));
    const std::uint64_t a = splitmix64(s);
    const std::uint64_t b = splitmix64(s);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return std::mt19937_64(seq);
}

// Canonical 53-bit double in [0,1). Pinned here instead of using the
// library distributions, whose output differs between standard libraries.
inline double next_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0,n). Multiply-shift map; the O(n/2^64) bias is
// irrelevant at simulation scales and the result is fully deterministic.
inline std::uint64_t next_below(std::mt19937_64& rng, std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(rng()) * n) >> 64);
}

// Uniform integer in [lo, hi] inclusive.
inline int next_int(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(next_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

}  // namespace idnc
