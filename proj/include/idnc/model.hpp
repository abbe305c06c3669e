#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "idnc/errors.hpp"
#include "idnc/rational.hpp"

namespace idnc {

// Packet universe is capped at one machine word so that every set operation
// (intersection, cover tests, clique checks) is a single instruction.
constexpr int kMaxPackets = 64;

// A set of packet indices, bit k = packet k. Doubles as a coding set: the
// XOR packet built from a set is fully described by its members.
using CodingSet = std::uint64_t;

constexpr CodingSet packet_bit(int k) { return CodingSet{1} << k; }

inline int set_size(CodingSet s) { return std::popcount(s); }
inline bool set_contains(CodingSet s, int k) { return (s >> k) & 1; }
inline int lowest_packet(CodingSet s) { return std::countr_zero(s); }

inline CodingSet set_of(std::initializer_list<int> packets) {
    CodingSet s = 0;
    for (int k : packets) s |= packet_bit(k);
    return s;
}

inline std::vector<int> set_members(CodingSet s) {
    std::vector<int> out;
    while (s) {
        out.push_back(std::countr_zero(s));
        s &= s - 1;
    }
    return out;
}

template <typename F>
inline void for_each_packet(CodingSet s, F&& f) {
    while (s) {
        f(std::countr_zero(s));
        s &= s - 1;
    }
}

// Ascending-index lexicographic order on member lists ({1,6} < {2,3}).
// The lowest bit where two sets differ decides.
inline bool set_lex_less(CodingSet a, CodingSet b) {
    const CodingSet d = a ^ b;
    if (d == 0) return false;
    return a & (d & -d);
}

// Binary demand matrix for one session round: row n is the set of packets
// receiver n still wants, column support of packet k is its target set.
// The empty matrix (no receivers, no packets) marks a finished session;
// otherwise no all-zero row or column is allowed.
class StateFeedbackMatrix {
public:
    StateFeedbackMatrix() = default;

    static StateFeedbackMatrix from_masks(std::vector<CodingSet> rows, int n_packets);
    static StateFeedbackMatrix from_rows(const std::vector<std::vector<int>>& rows);

    // Drops all-zero rows/columns of a raw demand matrix and remembers the
    // original indices of what survived.
    static StateFeedbackMatrix reduce(std::span<const CodingSet> raw_rows, int n_packets);

    int receivers() const { return static_cast<int>(rows_.size()); }
    int packets() const { return n_packets_; }
    bool empty() const { return rows_.empty(); }

    CodingSet wants(int n) const { return rows_[n]; }
    const std::vector<CodingSet>& rows() const { return rows_; }

    // Original row/column labels; identity unless the matrix came from reduce().
    const std::vector<int>& receiver_ids() const { return receiver_ids_; }
    const std::vector<int>& packet_ids() const { return packet_ids_; }

    // T_k: number of receivers wanting packet k.
    std::vector<int> targets() const;
    long total_demands() const;

    friend bool operator==(const StateFeedbackMatrix& a, const StateFeedbackMatrix& b) {
        return a.n_packets_ == b.n_packets_ && a.rows_ == b.rows_;
    }

private:
    void validate() const;

    int n_packets_ = 0;
    std::vector<CodingSet> rows_;
    std::vector<int> receiver_ids_;
    std::vector<int> packet_ids_;
};

// Pairwise conflict states, stored as the strict upper triangle in row-major
// pair order: (0,1),(0,2),...,(0,K-1),(1,2),...
class ConflictMatrix {
public:
    ConflictMatrix() = default;
    ConflictMatrix(int n_packets, std::vector<std::uint8_t> entries);

    static ConflictMatrix from_sfm(const StateFeedbackMatrix& sfm);

    int packets() const { return n_packets_; }
    const std::vector<std::uint8_t>& entries() const { return entries_; }

    bool conflict(int i, int j) const {
        if (i == j) return false;
        return entries_[pair_index(i, j, n_packets_)] != 0;
    }

    long zero_count() const;  // coding opportunities, M_0
    long one_count() const;

    static std::size_t pair_index(int i, int j, int k);

    friend bool operator==(const ConflictMatrix& a, const ConflictMatrix& b) {
        return a.n_packets_ == b.n_packets_ && a.entries_ == b.entries_;
    }

private:
    int n_packets_ = 0;
    std::vector<std::uint8_t> entries_;
};

ConflictMatrix conflict_matrix_from_sfm(const StateFeedbackMatrix& sfm);

enum class Decodability {
    InstantlyDecodable,
    NonInstantlyDecodable,
    NonInnovative,
};

struct Classification {
    Decodability kind;
    int packet = -1;  // delivered packet, valid only when instantly decodable
};

// How a coded packet looks to a receiver with the given wants set.
inline Classification classify_packet(CodingSet coding_set, CodingSet wants) {
    const CodingSet hit = coding_set & wants;
    if (hit == 0) return {Decodability::NonInnovative, -1};
    if ((hit & (hit - 1)) != 0) return {Decodability::NonInstantlyDecodable, -1};
    return {Decodability::InstantlyDecodable, std::countr_zero(hit)};
}

// Per-demand decoding slots of a finished (or in-progress) coded phase.
// slots[n][k] is the 1-based coded-phase slot where receiver n decoded
// packet k, 0 where the packet was never demanded or not yet decoded.
struct DelayLedger {
    std::vector<CodingSet> demands;          // initial wants per receiver
    std::vector<std::vector<int>> slots;     // same shape as the demand matrix
    int n_packets = 0;

    static DelayLedger for_demands(const StateFeedbackMatrix& sfm);

    std::vector<int> targets() const;
    long total_demands() const;
};

// Mean decoding slot over all demands. Throws IncompleteLedgerError if any
// demanded packet has no recorded slot.
Rational average_decoding_delay(const DelayLedger& ledger);

}  // namespace idnc
