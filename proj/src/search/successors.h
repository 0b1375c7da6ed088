#ifndef SEARCH_SUCCESSORS_H
#define SEARCH_SUCCESSORS_H

#include <variant>

#include "temporal_state.h"

namespace tplan {

TemporalState initial_state(const Problem& p);

// Snap and instantaneous actions applicable in the state: fact
// preconditions hold in F, numeric preconditions are satisfiable under
// the optimistic interval semantics over V, end snaps only for running
// actions, and the effects do not falsify a running fact invariant.
std::vector<SnapRef> applicable(const Problem& p, const TemporalState& s);

// Whether applying this action needs an LP solve, per the selective
// rule: schedule-dependent conditions or effects, duration-dependent
// effects of a flexible-duration owner, or starting/ending an action
// with continuous effects. Anything else is covered by the STN plus the
// carried-forward bounds.
bool needs_lp(const Problem& p, const TemporalState& s, const SnapRef& ref);

using ApplyResult = std::variant<TemporalState, Pruned>;

ApplyResult apply_happening(const Problem& p, const TemporalState& s, const SnapRef& ref,
                            const SearchConfig& cfg, SearchStats& stats, const LpSolver& solver);

}  // namespace tplan

#endif
