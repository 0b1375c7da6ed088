#ifndef SEARCH_GOAL_CHECK_H
#define SEARCH_GOAL_CHECK_H

#include "temporal_state.h"

namespace tplan {

// Schedule-dependent goal evaluation. Sets next.lpgc from the applied
// action and the predecessor, rejects states with running actions or
// failed non-schedule-dependent conjuncts, answers immediately when no
// goal fluent is schedule dependent, and otherwise runs the LP-based
// check only while the lpgc flag is primed (always, under the
// exhaustive strategy). `applied` is null for the initial state.
bool goal_check(const Problem& p, const TemporalState* prev, const SnapRef* applied,
                TemporalState& next, const SearchConfig& cfg, SearchStats& stats,
                const LpSolver& solver);

// LP feasibility of the schedule-dependent goal conjuncts on top of the
// plan-prefix encoding. Pre: no running actions.
bool lp_goal_check(const Problem& p, const TemporalState& s, const SearchConfig& cfg,
                   SearchStats& stats, const LpSolver& solver);

}  // namespace tplan

#endif
