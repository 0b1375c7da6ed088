#ifndef PDDL_AST_H
#define PDDL_AST_H

#include <optional>
#include <string>
#include <vector>

#include "sexpr.h"

namespace tplan::pddl {

struct TypedName {
    std::string name;
    std::string type = "object";
    friend bool operator==(const TypedName&, const TypedName&) = default;
};

struct AstAtom {
    std::string head;
    std::vector<std::string> args;  // ?variables or object names
    SourcePos pos;
    friend bool operator==(const AstAtom& a, const AstAtom& b) {
        return a.head == b.head && a.args == b.args;
    }
};

struct AstExpr {
    enum class Kind { Number, FluentRef, Duration, TimeRate, Add, Sub, Mul, Div };
    Kind kind = Kind::Number;
    double number = 0.0;
    AstAtom fluent;
    std::vector<AstExpr> kids;
    SourcePos pos;
};

enum class AstCmp { Lt, Le, Eq, Ge, Gt };

struct AstConjunct {
    enum class When { Always, AtStart, AtEnd, OverAll };
    When when = When::Always;
    bool is_comparison = false;
    // literal
    AstAtom atom;
    bool positive = true;
    // comparison lhs cmp rhs
    AstCmp cmp = AstCmp::Le;
    AstExpr lhs, rhs;
    SourcePos pos;
};

using AstCondition = std::vector<AstConjunct>;

struct AstEffect {
    enum class When { Always, AtStart, AtEnd };
    enum class Kind { Add, Del, Numeric, Continuous };
    When when = When::Always;
    Kind kind = Kind::Add;
    AstAtom atom;        // Add/Del target, or lvalue fluent for the numeric kinds
    std::string num_op;  // assign | increase | decrease | scale-up | scale-down
    AstExpr value;       // numeric rvalue, or continuous rate (sign not folded)
    bool ct_increase = true;
    SourcePos pos;
};

struct AstDurationConstraint {
    AstCmp cmp = AstCmp::Eq;
    AstExpr expr;
    SourcePos pos;
};

struct ActionSchema {
    std::string name;
    bool durative = false;
    std::vector<TypedName> params;
    std::vector<AstDurationConstraint> duration;
    AstCondition condition;
    std::vector<AstEffect> effects;
    SourcePos pos;
};

struct PredicateDecl {
    std::string name;
    std::vector<TypedName> params;
};

struct FunctionDecl {
    std::string name;
    std::vector<TypedName> params;
};

struct DomainAst {
    std::string name;
    std::vector<std::string> requirements;
    std::vector<TypedName> types;  // name, supertype
    std::vector<TypedName> constants;
    std::vector<PredicateDecl> predicates;
    std::vector<FunctionDecl> functions;
    std::vector<ActionSchema> actions;
};

struct FluentInit {
    AstAtom fluent;
    double value = 0.0;
};

struct AstMetric {
    bool minimize = true;
    AstExpr expr;
};

struct ProblemAst {
    std::string name;
    std::string domain_name;
    std::vector<TypedName> objects;
    std::vector<AstAtom> init_facts;
    std::vector<FluentInit> init_fluents;
    AstCondition goal;
    std::optional<AstMetric> metric;
};

// Canonical PDDL text; reparsing the output yields a structurally
// identical AST.
std::string to_pddl(const DomainAst& d);
std::string to_pddl(const ProblemAst& p);

}  // namespace tplan::pddl

#endif
