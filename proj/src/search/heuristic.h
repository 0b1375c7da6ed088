#ifndef SEARCH_HEURISTIC_H
#define SEARCH_HEURISTIC_H

#include "temporal_state.h"

namespace tplan {

// FF-style relaxed-plan estimate over delete-free, interval-relaxed
// numeric semantics, with durative actions split into their snap pairs.
// Fact goals are backchained through recorded first achievers; an
// unsatisfied numeric goal contributes the layer at which widening first
// satisfies it. Returns kInf only at a genuine relaxed fixpoint with the
// goal unreached.
double relaxed_plan_heuristic(const Problem& p, const TemporalState& s);

}  // namespace tplan

#endif
