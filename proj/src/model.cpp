#include "idnc/model.hpp"

#include <numeric>
#include <stdexcept>

namespace idnc {

StateFeedbackMatrix StateFeedbackMatrix::from_masks(std::vector<CodingSet> rows, int n_packets) {
    if (n_packets < 0 || n_packets > kMaxPackets)
        throw std::invalid_argument("SFM: packet count must be in [0," +
                                    std::to_string(kMaxPackets) + "]");
    StateFeedbackMatrix sfm;
    sfm.n_packets_ = n_packets;
    sfm.rows_ = std::move(rows);
    sfm.receiver_ids_.resize(sfm.rows_.size());
    std::iota(sfm.receiver_ids_.begin(), sfm.receiver_ids_.end(), 0);
    sfm.packet_ids_.resize(n_packets);
    std::iota(sfm.packet_ids_.begin(), sfm.packet_ids_.end(), 0);
    sfm.validate();
    return sfm;
}

StateFeedbackMatrix StateFeedbackMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
    std::vector<CodingSet> masks;
    masks.reserve(rows.size());
    std::size_t width = rows.empty() ? 0 : rows.front().size();
    for (const auto& row : rows) {
        if (row.size() != width)
            throw std::invalid_argument("SFM: ragged rows");
        CodingSet m = 0;
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (row[k] != 0 && row[k] != 1)
                throw std::invalid_argument("SFM: entries must be 0 or 1");
            if (row[k]) m |= packet_bit(static_cast<int>(k));
        }
        masks.push_back(m);
    }
    return from_masks(std::move(masks), static_cast<int>(width));
}

StateFeedbackMatrix StateFeedbackMatrix::reduce(std::span<const CodingSet> raw_rows,
                                                int n_packets) {
    if (n_packets < 0 || n_packets > kMaxPackets)
        throw std::invalid_argument("SFM: packet count must be in [0," +
                                    std::to_string(kMaxPackets) + "]");
    CodingSet wanted = 0;
    for (CodingSet r : raw_rows) wanted |= r;

    std::vector<int> packet_ids = set_members(wanted);
    StateFeedbackMatrix sfm;
    sfm.n_packets_ = static_cast<int>(packet_ids.size());
    sfm.packet_ids_ = std::move(packet_ids);

    for (int n = 0; n < static_cast<int>(raw_rows.size()); ++n) {
        if (raw_rows[n] == 0) continue;
        CodingSet compact = 0;
        for (int j = 0; j < sfm.n_packets_; ++j)
            if (set_contains(raw_rows[n], sfm.packet_ids_[j])) compact |= packet_bit(j);
        sfm.rows_.push_back(compact);
        sfm.receiver_ids_.push_back(n);
    }
    sfm.validate();
    return sfm;
}

void StateFeedbackMatrix::validate() const {
    if (rows_.empty() && n_packets_ == 0) return;
    if (rows_.empty() || n_packets_ == 0)
        throw std::invalid_argument("SFM: inconsistent empty state");
    const CodingSet universe =
        n_packets_ == kMaxPackets ? ~CodingSet{0} : (packet_bit(n_packets_) - 1);
    CodingSet covered = 0;
    for (CodingSet r : rows_) {
        if (r == 0) throw std::invalid_argument("SFM: receiver with empty wants set");
        if (r & ~universe) throw std::invalid_argument("SFM: packet index out of range");
        covered |= r;
    }
    if (covered != universe)
        throw std::invalid_argument("SFM: packet wanted by nobody");
}

std::vector<int> StateFeedbackMatrix::targets() const {
    std::vector<int> t(n_packets_, 0);
    for (CodingSet r : rows_)
        for_each_packet(r, [&](int k) { ++t[k]; });
    return t;
}

long StateFeedbackMatrix::total_demands() const {
    long total = 0;
    for (CodingSet r : rows_) total += set_size(r);
    return total;
}

ConflictMatrix::ConflictMatrix(int n_packets, std::vector<std::uint8_t> entries)
    : n_packets_(n_packets), entries_(std::move(entries)) {
    if (n_packets_ < 0 || n_packets_ > kMaxPackets)
        throw std::invalid_argument("ConflictMatrix: bad packet count");
    const std::size_t expect =
        static_cast<std::size_t>(n_packets_) * (n_packets_ - 1) / 2;
    if (n_packets_ >= 1 && entries_.size() != expect)
        throw std::invalid_argument("ConflictMatrix: wrong entry count");
    for (std::uint8_t v : entries_)
        if (v > 1) throw std::invalid_argument("ConflictMatrix: entries must be 0/1");
}

std::size_t ConflictMatrix::pair_index(int i, int j, int k) {
    if (i > j) std::swap(i, j);
    // row i starts after rows 0..i-1, which hold (k-1)+(k-2)+...+(k-i) entries
    const std::size_t row_start =
        static_cast<std::size_t>(i) * k - static_cast<std::size_t>(i) * (i + 1) / 2;
    return row_start + static_cast<std::size_t>(j - i - 1);
}

ConflictMatrix ConflictMatrix::from_sfm(const StateFeedbackMatrix& sfm) {
    const int k = sfm.packets();
    std::vector<std::uint8_t> entries(static_cast<std::size_t>(k) * (k - 1) / 2, 0);
    for (CodingSet r : sfm.rows()) {
        const std::vector<int> members = set_members(r);
        for (std::size_t a = 0; a < members.size(); ++a)
            for (std::size_t b = a + 1; b < members.size(); ++b)
                entries[pair_index(members[a], members[b], k)] = 1;
    }
    return ConflictMatrix(k, std::move(entries));
}

long ConflictMatrix::zero_count() const {
    long zeros = 0;
    for (std::uint8_t v : entries_)
        if (v == 0) ++zeros;
    return zeros;
}

long ConflictMatrix::one_count() const {
    return static_cast<long>(entries_.size()) - zero_count();
}

ConflictMatrix conflict_matrix_from_sfm(const StateFeedbackMatrix& sfm) {
    return ConflictMatrix::from_sfm(sfm);
}

DelayLedger DelayLedger::for_demands(const StateFeedbackMatrix& sfm) {
    DelayLedger ledger;
    ledger.demands = sfm.rows();
    ledger.n_packets = sfm.packets();
    ledger.slots.assign(sfm.receivers(), std::vector<int>(sfm.packets(), 0));
    return ledger;
}

std::vector<int> DelayLedger::targets() const {
    std::vector<int> t(n_packets, 0);
    for (CodingSet r : demands)
        for_each_packet(r, [&](int k) { ++t[k]; });
    return t;
}

long DelayLedger::total_demands() const {
    long total = 0;
    for (CodingSet r : demands) total += set_size(r);
    return total;
}

Rational average_decoding_delay(const DelayLedger& ledger) {
    long slot_sum = 0;
    long demand_count = 0;
    for (std::size_t n = 0; n < ledger.demands.size(); ++n) {
        for (int k = 0; k < ledger.n_packets; ++k) {
            const bool demanded = set_contains(ledger.demands[n], k);
            const int slot = ledger.slots[n][k];
            if (demanded && slot <= 0)
                throw IncompleteLedgerError("undecoded demand: receiver " + std::to_string(n) +
                                            ", packet " + std::to_string(k));
            if (!demanded && slot != 0)
                throw std::invalid_argument("ledger has a slot for an undemanded packet");
            if (demanded) {
                slot_sum += slot;
                ++demand_count;
            }
        }
    }
    if (demand_count == 0) return Rational(0);
    return Rational(slot_sum, demand_count);
}

}  // namespace idnc
