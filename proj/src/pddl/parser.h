#ifndef PDDL_PARSER_H
#define PDDL_PARSER_H

#include "ast.h"

namespace tplan::pddl {

// Both throw PddlError with source positions. Unsupported constructs
// (processes, events, derived predicates, quantified or disjunctive
// conditions, requirement tags outside the supported set, ...) are
// rejected with a structured unsupported-feature error.
DomainAst parse_domain(const std::string& text);
ProblemAst parse_problem(const std::string& text);

}  // namespace tplan::pddl

#endif
