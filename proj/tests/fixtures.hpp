#pragma once

#include <vector>

#include "idnc/graph.hpp"
#include "idnc/model.hpp"

namespace idnc::test {

// Six packets, five receivers; the running golden instance. Wants sets
// (0-based): {0,4,5}, {1,5}, {2,3,4}, {3,5}, {2,4}. Targets (1,1,2,2,3,3),
// seven coding opportunities, four maximal coding sets, one minimum
// collection of size three.
inline StateFeedbackMatrix golden_sfm() {
    return StateFeedbackMatrix::from_rows({
        {1, 0, 0, 0, 1, 1},
        {0, 1, 0, 0, 0, 1},
        {0, 0, 1, 1, 1, 0},
        {0, 0, 0, 1, 0, 1},
        {0, 0, 1, 0, 1, 0},
    });
}

inline IdncGraph golden_graph() {
    return IdncGraph::from_conflicts(ConflictMatrix::from_sfm(golden_sfm()));
}

// Second golden instance, stated through its maximal coding sets:
// {0,2},{1,2,4},{2,3},{3,5},{4,5} on six packets. The unique minimum
// collection is {{0,2},{1,2,4},{3,5}}.
inline std::vector<CodingSet> branch_cliques() {
    return {set_of({0, 2}), set_of({1, 2, 4}), set_of({2, 3}), set_of({3, 5}),
            set_of({4, 5})};
}

// A demand matrix realizing the branch_cliques instance: one receiver per
// conflicting pair.
inline StateFeedbackMatrix branch_sfm() {
    std::vector<std::vector<int>> rows;
    const std::vector<std::pair<int, int>> conflicts = {
        {0, 1}, {0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 5}, {2, 5}, {3, 4}};
    for (auto [i, j] : conflicts) {
        std::vector<int> row(6, 0);
        row[i] = row[j] = 1;
        rows.push_back(row);
    }
    return StateFeedbackMatrix::from_rows(rows);
}

}  // namespace idnc::test
