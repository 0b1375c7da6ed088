#ifndef TESTS_SUPPORT_ORACLES_H
#define TESTS_SUPPORT_ORACLES_H

#include <optional>
#include <vector>

#include "lp/lp_model.h"
#include "util/numbers.h"

namespace tplan::testing {

struct StnEdge {
    int i, j;
    double lb, ub;
};

struct FloydWarshallResult {
    bool consistent = true;
    std::vector<double> dist;  // n x n, valid when consistent
    double at(int n, int i, int j) const { return dist[i * n + j]; }
};

// From-scratch all-pairs shortest paths over the distance graph of the
// given constraint set, the independent oracle for the incremental STN.
FloydWarshallResult floyd_warshall(int nodes, const std::vector<StnEdge>& edges);

struct VertexEnumResult {
    bool feasible = false;
    double objective = 0.0;  // best vertex value in the optimizing direction
};

// Enumerates every basic point of a small LP (<= 3 variables, all
// variable boxes finite) by intersecting constraint/bound subsets,
// keeps the feasible ones, and optimizes over them.
VertexEnumResult vertex_enum_solve(const LpModel& model);

}  // namespace tplan::testing

#endif
