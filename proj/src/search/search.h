#ifndef SEARCH_SEARCH_H
#define SEARCH_SEARCH_H

#include <optional>
#include <string>

#include "temporal_state.h"

namespace tplan {

struct PlanStep {
    double time = 0.0;
    std::string action;  // grounded name, parenthesized
    std::optional<double> duration;  // set for durative actions
};

struct PlanResult {
    enum class Status { Solved, Unsolvable, Timeout };
    Status status = Status::Unsolvable;
    std::vector<PlanStep> plan;
    SearchStats stats;
};

const char* status_name(PlanResult::Status s);

// Greedy best-first (or weighted-A*) forward search over temporal
// states with duplicate detection, selective LP execution and the
// schedule-dependent goal check; on success the final LP assigns
// timestamps optimizing the declared metric or the makespan.
PlanResult search(const Problem& p, const SearchConfig& cfg);

// Exposed for the regression tests: timestamps for a goal state.
std::vector<PlanStep> schedule(const Problem& p, const TemporalState& goal_state,
                               const SearchConfig& cfg, const LpSolver& solver);

}  // namespace tplan

#endif
