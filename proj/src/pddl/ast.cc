#include "ast.h"

#include <sstream>

namespace tplan::pddl {

namespace {

void write_number(std::ostream& os, double v) {
    std::ostringstream tmp;
    tmp.precision(12);
    tmp << v;
    os << tmp.str();
}

void write_typed_list(std::ostream& os, const std::vector<TypedName>& list) {
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (i) os << " ";
        os << list[i].name << " - " << list[i].type;
    }
}

void write_atom(std::ostream& os, const AstAtom& a) {
    os << "(" << a.head;
    for (const auto& arg : a.args) os << " " << arg;
    os << ")";
}

void write_expr(std::ostream& os, const AstExpr& e) {
    switch (e.kind) {
        case AstExpr::Kind::Number:
            write_number(os, e.number);
            return;
        case AstExpr::Kind::Duration:
            os << "?duration";
            return;
        case AstExpr::Kind::TimeRate:
            os << "#t";
            return;
        case AstExpr::Kind::FluentRef:
            write_atom(os, e.fluent);
            return;
        case AstExpr::Kind::Add:
        case AstExpr::Kind::Sub:
        case AstExpr::Kind::Mul:
        case AstExpr::Kind::Div: {
            const char* op = e.kind == AstExpr::Kind::Add   ? "+"
                             : e.kind == AstExpr::Kind::Sub ? "-"
                             : e.kind == AstExpr::Kind::Mul ? "*"
                                                            : "/";
            os << "(" << op;
            for (const auto& k : e.kids) {
                os << " ";
                write_expr(os, k);
            }
            os << ")";
            return;
        }
    }
}

const char* cmp_text(AstCmp c) {
    switch (c) {
        case AstCmp::Lt: return "<";
        case AstCmp::Le: return "<=";
        case AstCmp::Eq: return "=";
        case AstCmp::Ge: return ">=";
        case AstCmp::Gt: return ">";
    }
    return "?";
}

void write_conjunct_body(std::ostream& os, const AstConjunct& c) {
    if (c.is_comparison) {
        os << "(" << cmp_text(c.cmp) << " ";
        write_expr(os, c.lhs);
        os << " ";
        write_expr(os, c.rhs);
        os << ")";
    } else if (!c.positive) {
        os << "(not ";
        write_atom(os, c.atom);
        os << ")";
    } else {
        write_atom(os, c.atom);
    }
}

void write_condition(std::ostream& os, const AstCondition& cond, bool timed) {
    os << "(and";
    for (const auto& c : cond) {
        os << " ";
        if (timed) {
            switch (c.when) {
                case AstConjunct::When::AtStart: os << "(at start "; break;
                case AstConjunct::When::AtEnd: os << "(at end "; break;
                case AstConjunct::When::OverAll: os << "(over all "; break;
                case AstConjunct::When::Always: os << "(at start "; break;
            }
            write_conjunct_body(os, c);
            os << ")";
        } else {
            write_conjunct_body(os, c);
        }
    }
    os << ")";
}

void write_effects(std::ostream& os, const std::vector<AstEffect>& effs, bool durative) {
    os << "(and";
    for (const auto& e : effs) {
        os << " ";
        std::string close;
        if (durative && e.kind != AstEffect::Kind::Continuous) {
            os << (e.when == AstEffect::When::AtEnd ? "(at end " : "(at start ");
            close = ")";
        }
        switch (e.kind) {
            case AstEffect::Kind::Add:
                write_atom(os, e.atom);
                break;
            case AstEffect::Kind::Del:
                os << "(not ";
                write_atom(os, e.atom);
                os << ")";
                break;
            case AstEffect::Kind::Numeric:
                os << "(" << e.num_op << " ";
                write_atom(os, e.atom);
                os << " ";
                write_expr(os, e.value);
                os << ")";
                break;
            case AstEffect::Kind::Continuous:
                os << "(" << (e.ct_increase ? "increase" : "decrease") << " ";
                write_atom(os, e.atom);
                os << " (* #t ";
                write_expr(os, e.value);
                os << "))";
                break;
        }
        os << close;
    }
    os << ")";
}

}  // namespace

std::string to_pddl(const DomainAst& d) {
    std::ostringstream os;
    os << "(define (domain " << d.name << ")\n";
    if (!d.requirements.empty()) {
        os << "  (:requirements";
        for (const auto& r : d.requirements) os << " " << r;
        os << ")\n";
    }
    if (!d.types.empty()) {
        os << "  (:types ";
        write_typed_list(os, d.types);
        os << ")\n";
    }
    if (!d.constants.empty()) {
        os << "  (:constants ";
        write_typed_list(os, d.constants);
        os << ")\n";
    }
    if (!d.predicates.empty()) {
        os << "  (:predicates";
        for (const auto& p : d.predicates) {
            os << " (" << p.name;
            if (!p.params.empty()) {
                os << " ";
                write_typed_list(os, p.params);
            }
            os << ")";
        }
        os << ")\n";
    }
    if (!d.functions.empty()) {
        os << "  (:functions";
        for (const auto& f : d.functions) {
            os << " (" << f.name;
            if (!f.params.empty()) {
                os << " ";
                write_typed_list(os, f.params);
            }
            os << ")";
        }
        os << ")\n";
    }
    for (const auto& a : d.actions) {
        os << "  (" << (a.durative ? ":durative-action " : ":action ") << a.name << "\n";
        os << "    :parameters (";
        write_typed_list(os, a.params);
        os << ")\n";
        if (a.durative) {
            os << "    :duration (and";
            for (const auto& dc : a.duration) {
                os << " (" << cmp_text(dc.cmp) << " ?duration ";
                write_expr(os, dc.expr);
                os << ")";
            }
            os << ")\n";
            os << "    :condition ";
            write_condition(os, a.condition, true);
            os << "\n";
        } else {
            os << "    :precondition ";
            write_condition(os, a.condition, false);
            os << "\n";
        }
        os << "    :effect ";
        write_effects(os, a.effects, a.durative);
        os << ")\n";
    }
    os << ")\n";
    return os.str();
}

std::string to_pddl(const ProblemAst& p) {
    std::ostringstream os;
    os << "(define (problem " << p.name << ")\n";
    os << "  (:domain " << p.domain_name << ")\n";
    if (!p.objects.empty()) {
        os << "  (:objects ";
        write_typed_list(os, p.objects);
        os << ")\n";
    }
    os << "  (:init\n";
    for (const auto& f : p.init_facts) {
        os << "    ";
        write_atom(os, f);
        os << "\n";
    }
    for (const auto& f : p.init_fluents) {
        os << "    (= ";
        write_atom(os, f.fluent);
        os << " ";
        write_number(os, f.value);
        os << ")\n";
    }
    os << "  )\n";
    os << "  (:goal ";
    write_condition(os, p.goal, false);
    os << ")\n";
    if (p.metric) {
        os << "  (:metric " << (p.metric->minimize ? "minimize" : "maximize") << " ";
        write_expr(os, p.metric->expr);
        os << ")\n";
    }
    os << ")\n";
    return os.str();
}

}  // namespace tplan::pddl
