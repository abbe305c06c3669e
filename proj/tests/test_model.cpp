#include <doctest.h>

#include <algorithm>
#include <set>

#include "idnc/model.hpp"
#include "idnc/rng.hpp"
#include "idnc/sfm_io.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace idnc;
using test::golden_sfm;

TEST_CASE("classify_packet against the worked examples") {
    const CodingSet m = set_of({3, 4});  // packets p4, p5 (1-based)

    const Classification a = classify_packet(m, set_of({0, 4, 5}));
    CHECK(a.kind == Decodability::InstantlyDecodable);
    CHECK(a.packet == 4);

    const Classification b = classify_packet(m, set_of({2, 3, 4}));
    CHECK(b.kind == Decodability::NonInstantlyDecodable);

    const Classification c = classify_packet(m, 0);
    CHECK(c.kind == Decodability::NonInnovative);
}

TEST_CASE("conflict matrix of the golden instance") {
    const StateFeedbackMatrix sfm = golden_sfm();
    const ConflictMatrix cm = conflict_matrix_from_sfm(sfm);

    // independent oracle: pairwise row intersection over the wants sets
    std::set<std::pair<int, int>> expected;
    for (int n = 0; n < sfm.receivers(); ++n)
        for (int i = 0; i < sfm.packets(); ++i)
            for (int j = i + 1; j < sfm.packets(); ++j)
                if (set_contains(sfm.wants(n), i) && set_contains(sfm.wants(n), j))
                    expected.insert({i, j});

    const std::set<std::pair<int, int>> golden = {{0, 4}, {0, 5}, {1, 5}, {2, 3},
                                                  {2, 4}, {3, 4}, {3, 5}, {4, 5}};
    CHECK(expected == golden);

    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            CHECK(cm.conflict(i, j) == (expected.count({i, j}) > 0));

    CHECK(cm.zero_count() == 7);
    CHECK(cm.one_count() == 8);
    CHECK(cm.zero_count() + cm.one_count() == 15);
}

TEST_CASE("conflict matrix degenerate shapes") {
    SUBCASE("one receiver wanting everything conflicts all pairs") {
        const auto sfm = StateFeedbackMatrix::from_rows({{1, 1, 1, 1}});
        const ConflictMatrix cm = conflict_matrix_from_sfm(sfm);
        CHECK(cm.one_count() == 6);
        CHECK(cm.zero_count() == 0);
    }
    SUBCASE("disjoint single-packet wants sets conflict nowhere") {
        const auto sfm = StateFeedbackMatrix::from_rows(
            {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
        CHECK(conflict_matrix_from_sfm(sfm).one_count() == 0);
    }
}

TEST_CASE("conflict matrix is row-permutation invariant and column equivariant") {
    std::mt19937_64 rng = make_stream(11, 0);
    for (int iter = 0; iter < 40; ++iter) {
        const StateFeedbackMatrix sfm = test::random_sfm(6, 8, rng);
        const ConflictMatrix base = conflict_matrix_from_sfm(sfm);

        // shuffle rows
        std::vector<CodingSet> rows(sfm.rows());
        for (std::size_t i = rows.size(); i > 1; --i)
            std::swap(rows[i - 1], rows[next_below(rng, i)]);
        const auto shuffled = StateFeedbackMatrix::from_masks(rows, sfm.packets());
        CHECK(conflict_matrix_from_sfm(shuffled) == base);

        // permute columns
        std::vector<int> perm(sfm.packets());
        for (int i = 0; i < sfm.packets(); ++i) perm[i] = i;
        for (std::size_t i = perm.size(); i > 1; --i)
            std::swap(perm[i - 1], perm[next_below(rng, i)]);
        std::vector<CodingSet> permuted;
        for (CodingSet r : sfm.rows()) {
            CodingSet out = 0;
            for_each_packet(r, [&](int k) { out |= packet_bit(perm[k]); });
            permuted.push_back(out);
        }
        const auto cols = StateFeedbackMatrix::from_masks(permuted, sfm.packets());
        const ConflictMatrix mapped = conflict_matrix_from_sfm(cols);
        for (int i = 0; i < sfm.packets(); ++i)
            for (int j = i + 1; j < sfm.packets(); ++j)
                CHECK(mapped.conflict(perm[i], perm[j]) == base.conflict(i, j));
    }
}

TEST_CASE("distinct demand matrices can share a conflict matrix") {
    const auto a = StateFeedbackMatrix::from_rows({{1, 1}});
    const auto b = StateFeedbackMatrix::from_rows({{1, 1}, {1, 1}});
    CHECK_FALSE(a == b);
    CHECK(conflict_matrix_from_sfm(a) == conflict_matrix_from_sfm(b));
}

TEST_CASE("SFM invariants are enforced") {
    CHECK_THROWS_AS(StateFeedbackMatrix::from_rows({{1, 0}, {0, 0}}),
                    std::invalid_argument);  // empty wants set
    CHECK_THROWS_AS(StateFeedbackMatrix::from_rows({{1, 0}, {1, 0}}),
                    std::invalid_argument);  // packet wanted by nobody
    CHECK_NOTHROW(StateFeedbackMatrix::from_rows({}));  // finished session
}

TEST_CASE("reduce drops zero rows and columns and keeps the index maps") {
    const std::vector<CodingSet> raw = {0, set_of({1, 3}), 0, set_of({3})};
    const StateFeedbackMatrix sfm = StateFeedbackMatrix::reduce(raw, 5);
    CHECK(sfm.receivers() == 2);
    CHECK(sfm.packets() == 2);
    CHECK(sfm.receiver_ids() == std::vector<int>{1, 3});
    CHECK(sfm.packet_ids() == std::vector<int>{1, 3});
    CHECK(sfm.wants(0) == set_of({0, 1}));
    CHECK(sfm.wants(1) == set_of({1}));
}

TEST_CASE("average decoding delay of the worked four-transmission ledger") {
    const StateFeedbackMatrix sfm = golden_sfm();
    DelayLedger ledger = DelayLedger::for_demands(sfm);
    // transmissions: {p1^p2, p3^p6, p4, p5} in slots 1..4
    ledger.slots[0] = {1, 0, 0, 0, 4, 2};
    ledger.slots[1] = {0, 1, 0, 0, 0, 2};
    ledger.slots[2] = {0, 0, 2, 3, 4, 0};
    ledger.slots[3] = {0, 0, 0, 3, 0, 2};
    ledger.slots[4] = {0, 0, 2, 0, 4, 0};
    CHECK(average_decoding_delay(ledger) == Rational(5, 2));
}

TEST_CASE("average decoding delay trivial cases and errors") {
    const auto sfm = StateFeedbackMatrix::from_rows({{1, 1}, {0, 1}});
    DelayLedger ledger = DelayLedger::for_demands(sfm);

    SUBCASE("all decoded in slot one") {
        ledger.slots = {{1, 1}, {0, 1}};
        CHECK(average_decoding_delay(ledger) == Rational(1));
    }
    SUBCASE("single late demand") {
        const auto one = StateFeedbackMatrix::from_rows({{1}});
        DelayLedger l = DelayLedger::for_demands(one);
        l.slots = {{7}};
        CHECK(average_decoding_delay(l) == Rational(7));
    }
    SUBCASE("incomplete ledger is an error") {
        ledger.slots = {{1, 0}, {0, 1}};
        CHECK_THROWS_AS(average_decoding_delay(ledger), IncompleteLedgerError);
    }
}

TEST_CASE("SFM JSON round trip is byte stable") {
    const StateFeedbackMatrix sfm = golden_sfm();
    const std::string once = sfm_to_json(sfm);
    const StateFeedbackMatrix back = parse_sfm_json(once);
    CHECK(back == sfm);
    CHECK(sfm_to_json(back) == once);
}

TEST_CASE("SFM CSV round trip and error reporting") {
    const StateFeedbackMatrix sfm = golden_sfm();
    const StateFeedbackMatrix back = parse_sfm_csv(sfm_to_csv(sfm));
    CHECK(back == sfm);

    try {
        parse_sfm_csv("1,0\n0,x\n");
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        const std::string what = e.what();
        CHECK(what.find("line 2") != std::string::npos);
        CHECK(what.find("column 2") != std::string::npos);
    }
}
