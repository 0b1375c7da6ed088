#ifndef MODEL_STATE_OPS_H
#define MODEL_STATE_OPS_H

#include <span>
#include <vector>

#include "../util/bits.h"
#include "problem.h"

namespace tplan {

struct DuplicateLvalue : EvalError {
    using EvalError::EvalError;
};

// Applies a happening's discrete effects with simultaneous-read
// semantics: every rvalue is evaluated against the pre-state, then all
// lvalues are written; fact deletes are applied before adds. Two numeric
// effects writing the same lvalue in one happening is an error.
// `duration` backs ?duration in rvalues (NaN when not applicable).
void apply_discrete(std::vector<double>& values, Bits& facts,
                    std::span<const DiscreteEffect> effects, double duration);

// Exact evaluation of a condition against literal values.
bool holds_literal(const Condition& c, const Bits& facts, std::span<const double> values,
                   double tol = kTolerance);

// Optimistic evaluation against fluent bounds: true when some point in
// the boxes can satisfy every numeric conjunct. Nonlinear conjuncts are
// evaluated exactly and require point intervals.
bool holds_optimistic(const Condition& c, const Bits& facts, std::span<const Interval> bounds,
                      std::span<const double> literal_values, const Bits& literal_mask,
                      double tol = kTolerance);

bool numeric_holds_literal(const NumericCondition& nc, std::span<const double> values,
                           double tol = kTolerance);

// Satisfiability of a single numeric condition over interval bounds.
bool numeric_satisfiable(const NumericCondition& nc, std::span<const Interval> bounds,
                         double tol = kTolerance);

}  // namespace tplan

#endif
