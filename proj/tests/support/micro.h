#ifndef TESTS_SUPPORT_MICRO_H
#define TESTS_SUPPORT_MICRO_H

#include "search/search.h"
#include "search/successors.h"
#include "util/rng.h"

namespace tplan::testing {

// Small randomized temporal-numeric problems: a handful of facts and
// fluents, a mix of instantaneous and durative actions with fixed and
// flexible durations, discrete and continuous effects (constant rates
// and rates read from another fluent), invariants, and short goals.
Problem random_micro_problem(SplitMix64& rng);

// Applies random applicable happenings under the exhaustive strategy,
// collecting consistent states. Used to produce plan prefixes for the
// encoding-equivalence suites.
std::vector<TemporalState> random_walk(const Problem& p, SplitMix64& rng, int max_happenings,
                                       SearchStats& stats, const LpSolver& solver);

}  // namespace tplan::testing

#endif
