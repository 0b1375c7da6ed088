#ifndef PDDL_GROUNDER_H
#define PDDL_GROUNDER_H

#include "../model/problem.h"
#include "ast.h"

namespace tplan::pddl {

// Grounds the parsed domain/problem pair into the finite propositional-
// numeric problem:
//  - typed parameter bindings are fully enumerated, in lexicographic
//    order (schema name, then bound objects), so grounding is
//    deterministic;
//  - static fluents (never an lvalue) are folded into constants, static
//    predicate literals are folded away, and actions with statically
//    unsatisfiable conditions are pruned;
//  - expressions are normalized to linear form where possible; nonlinear
//    expressions are retained symbolically and only rejected later if a
//    schedule-dependent context needs them.
// Throws PddlError (Semantic/Unsupported) on unresolved names, arity or
// type mismatches, and out-of-subset constructs.
Problem ground(const DomainAst& domain, const ProblemAst& problem);

}  // namespace tplan::pddl

#endif
