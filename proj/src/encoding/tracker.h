#ifndef ENCODING_TRACKER_H
#define ENCODING_TRACKER_H

#include <span>
#include <vector>

#include "../model/problem.h"
#include "../model/state_ops.h"
#include "../util/bits.h"
#include "records.h"

namespace tplan {

struct NonlinearUnderSchedule : EvalError {
    using EvalError::EvalError;
};
struct NonconstantRate : EvalError {
    using EvalError::EvalError;
};

// The numeric half of a temporal state: exact values where known, bounds
// V everywhere, and the schedule-dependency tracker. A fluent is in
// `dependent` exactly while its value can still vary with the schedule;
// literal_mask marks fluents whose value is a single known number.
struct NumericState {
    std::vector<double> literals;
    Bits literal_mask;
    std::vector<Interval> bounds;
    Bits dependent;
    std::vector<int> first_dependent_at;  // fluent -> happening index, -1 if never
    std::vector<int> last_effect_at;      // fluent -> happening of last discrete effect

    static NumericState initial(const Problem& p);
};

// Dependency/value transition for one happening:
//  1. the temporal context closing at this happening marks every fluent
//     with a nonzero cumulative rate as schedule dependent and widens its
//     bounds by rate * (context duration bounds);
//  2. discrete effects update literal values, or bounds and dependency
//     when the lvalue, the rvalue, or a flexible ?duration makes the
//     result schedule dependent;
//  3. an assignment from a schedule-independent rvalue takes the fluent
//     back out of the dependent set.
// Throws NonlinearUnderSchedule when a nonlinear rvalue (or a scale
// op's rvalue) meets a schedule-dependent term.
void apply_numeric_transition(const Problem& p, NumericState& ns,
                              std::span<const std::pair<int, double>> context_rates,
                              Interval context_bounds, const SnapAction& snap,
                              Interval duration, int happening_index);

// Cumulative rates for the context that starts after this happening,
// evaluated against literal values. A rate expression that references a
// schedule-dependent fluent has no constant value: NonconstantRate.
std::vector<std::pair<int, double>> compute_context_rates(
    const Problem& p, const NumericState& ns, std::span<const RunningAction> running);

}  // namespace tplan

#endif
