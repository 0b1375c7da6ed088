#include "parser.h"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace tplan::pddl {

namespace {

const std::set<std::string> kSupportedRequirements = {
    ":typing",       ":durative-actions",      ":duration-inequalities",
    ":fluents",      ":continuous-effects",    ":negative-preconditions",
};

bool is_number(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

std::vector<TypedName> parse_typed_list(const Sexpr& list, std::size_t from = 0) {
    std::vector<TypedName> out;
    std::vector<std::string> pending;
    for (std::size_t i = from; i < list.items.size(); ++i) {
        const Sexpr& it = list.items[i];
        if (!it.is_atom()) throw syntax_error(it.pos, "expected a name in typed list");
        if (it.atom == "-") {
            if (i + 1 >= list.items.size())
                throw syntax_error(it.pos, "expected a type after '-'");
            const Sexpr& ty = list.items[++i];
            if (!ty.is_atom()) throw unsupported(ty.pos, "either type");
            for (auto& n : pending) out.push_back({n, ty.atom});
            pending.clear();
        } else {
            pending.push_back(it.atom);
        }
    }
    for (auto& n : pending) out.push_back({n, "object"});
    return out;
}

AstAtom parse_atom(const Sexpr& s) {
    if (!s.is_list || s.items.empty() || !s.items[0].is_atom())
        throw syntax_error(s.pos, "expected an atom (predicate-or-fluent args...)");
    AstAtom a;
    a.head = s.items[0].atom;
    a.pos = s.pos;
    for (std::size_t i = 1; i < s.items.size(); ++i) {
        if (!s.items[i].is_atom()) throw syntax_error(s.items[i].pos, "expected a term");
        a.args.push_back(s.items[i].atom);
    }
    return a;
}

AstCmp parse_cmp(const std::string& op, SourcePos pos) {
    if (op == "<") return AstCmp::Lt;
    if (op == "<=") return AstCmp::Le;
    if (op == "=") return AstCmp::Eq;
    if (op == ">=") return AstCmp::Ge;
    if (op == ">") return AstCmp::Gt;
    throw syntax_error(pos, "expected a comparison operator, got '" + op + "'");
}

AstExpr parse_expr(const Sexpr& s) {
    AstExpr e;
    e.pos = s.pos;
    if (s.is_atom()) {
        double num;
        if (is_number(s.atom, num)) {
            e.kind = AstExpr::Kind::Number;
            e.number = num;
            return e;
        }
        if (s.atom == "?duration") {
            e.kind = AstExpr::Kind::Duration;
            return e;
        }
        if (s.atom == "#t") {
            e.kind = AstExpr::Kind::TimeRate;
            return e;
        }
        if (!s.atom.empty() && s.atom[0] == '?')
            throw syntax_error(s.pos, "unexpected variable '" + s.atom + "' in numeric expression");
        // Bare fluent reference without arguments.
        e.kind = AstExpr::Kind::FluentRef;
        e.fluent.head = s.atom;
        e.fluent.pos = s.pos;
        return e;
    }
    if (s.items.empty()) throw syntax_error(s.pos, "empty numeric expression");
    const std::string& head = s.items[0].atom;
    if (head == "+" || head == "-" || head == "*" || head == "/") {
        e.kind = head == "+"   ? AstExpr::Kind::Add
                 : head == "-" ? AstExpr::Kind::Sub
                 : head == "*" ? AstExpr::Kind::Mul
                               : AstExpr::Kind::Div;
        for (std::size_t i = 1; i < s.items.size(); ++i) e.kids.push_back(parse_expr(s.items[i]));
        if (e.kids.empty()) throw syntax_error(s.pos, "arithmetic operator needs arguments");
        if (e.kind == AstExpr::Kind::Div && e.kids.size() != 2)
            throw syntax_error(s.pos, "'/' takes exactly two arguments");
        return e;
    }
    e.kind = AstExpr::Kind::FluentRef;
    e.fluent = parse_atom(s);
    return e;
}

bool is_comparison_head(const std::string& h) {
    return h == "<" || h == "<=" || h == "=" || h == ">=" || h == ">";
}

// A "(= x y)" form is a comparison when a side is numeric; object
// equality is outside the supported subset.
void parse_condition_leaf(const Sexpr& s, AstConjunct::When when, AstCondition& out) {
    if (!s.is_list || s.items.empty()) throw syntax_error(s.pos, "expected a condition");
    const std::string& head = s.items[0].atom;
    if (head == "and") {
        for (std::size_t i = 1; i < s.items.size(); ++i)
            parse_condition_leaf(s.items[i], when, out);
        return;
    }
    if (head == "or" || head == "imply" || head == "forall" || head == "exists")
        throw unsupported(s.pos, head);
    AstConjunct c;
    c.when = when;
    c.pos = s.pos;
    if (head == "not") {
        if (s.items.size() != 2) throw syntax_error(s.pos, "'not' takes one argument");
        const Sexpr& inner = s.items[1];
        if (inner.is_list && !inner.items.empty() && is_comparison_head(inner.items[0].atom))
            throw unsupported(s.pos, "negated numeric condition");
        if (inner.is_list && !inner.items.empty() && inner.items[0].atom == "and")
            throw unsupported(s.pos, "negated conjunction");
        c.atom = parse_atom(inner);
        c.positive = false;
        out.push_back(std::move(c));
        return;
    }
    if (is_comparison_head(head)) {
        if (s.items.size() != 3) throw syntax_error(s.pos, "comparison takes two arguments");
        c.is_comparison = true;
        c.cmp = parse_cmp(head, s.pos);
        c.lhs = parse_expr(s.items[1]);
        c.rhs = parse_expr(s.items[2]);
        out.push_back(std::move(c));
        return;
    }
    c.atom = parse_atom(s);
    out.push_back(std::move(c));
}

// Durative-action condition: only at start / at end / over all wrappers.
void parse_timed_condition(const Sexpr& s, AstCondition& out) {
    if (!s.is_list) throw syntax_error(s.pos, "expected a condition");
    if (s.items.empty()) return;  // vacuous ()
    const std::string& head = s.items[0].atom;
    if (head == "and") {
        for (std::size_t i = 1; i < s.items.size(); ++i) parse_timed_condition(s.items[i], out);
        return;
    }
    if (head == "at" && s.items.size() == 3 && s.items[1].is_atom()) {
        const std::string& which = s.items[1].atom;
        if (which == "start") return parse_condition_leaf(s.items[2], AstConjunct::When::AtStart, out);
        if (which == "end") return parse_condition_leaf(s.items[2], AstConjunct::When::AtEnd, out);
        throw syntax_error(s.pos, "expected (at start ...) or (at end ...)");
    }
    if (head == "over" && s.items.size() == 3 && s.items[1].is_atom() && s.items[1].atom == "all")
        return parse_condition_leaf(s.items[2], AstConjunct::When::OverAll, out);
    throw unsupported(s.pos, "durative condition without a temporal wrapper");
}

bool expr_contains(const AstExpr& e, AstExpr::Kind kind) {
    if (e.kind == kind) return true;
    return std::any_of(e.kids.begin(), e.kids.end(),
                       [&](const AstExpr& k) { return expr_contains(k, kind); });
}

// Recognizes (OP (f args) (* #t rate)) and friends; the #t factor marks
// a continuous effect.
bool split_time_product(const AstExpr& e, AstExpr& rate_out) {
    if (e.kind == AstExpr::Kind::TimeRate) {
        rate_out.kind = AstExpr::Kind::Number;
        rate_out.number = 1.0;
        return true;
    }
    if (e.kind != AstExpr::Kind::Mul) return false;
    int time_factors = 0;
    std::vector<AstExpr> rest;
    for (const auto& k : e.kids) {
        if (k.kind == AstExpr::Kind::TimeRate) {
            ++time_factors;
        } else {
            if (expr_contains(k, AstExpr::Kind::TimeRate)) return false;
            rest.push_back(k);
        }
    }
    if (time_factors != 1) return false;
    if (rest.size() == 1) {
        rate_out = rest[0];
    } else {
        rate_out.kind = AstExpr::Kind::Mul;
        rate_out.kids = std::move(rest);
    }
    return true;
}

void parse_effect_leaf(const Sexpr& s, AstEffect::When when, bool durative,
                       std::vector<AstEffect>& out) {
    if (!s.is_list || s.items.empty()) throw syntax_error(s.pos, "expected an effect");
    const std::string& head = s.items[0].atom;
    if (head == "and") {
        for (std::size_t i = 1; i < s.items.size(); ++i)
            parse_effect_leaf(s.items[i], when, durative, out);
        return;
    }
    if (head == "when" || head == "forall") throw unsupported(s.pos, head);
    AstEffect e;
    e.when = when;
    e.pos = s.pos;
    if (head == "not") {
        if (s.items.size() != 2) throw syntax_error(s.pos, "'not' takes one argument");
        e.kind = AstEffect::Kind::Del;
        e.atom = parse_atom(s.items[1]);
        out.push_back(std::move(e));
        return;
    }
    if (head == "assign" || head == "increase" || head == "decrease" || head == "scale-up" ||
        head == "scale-down") {
        if (s.items.size() != 3) throw syntax_error(s.pos, head + " takes two arguments");
        AstExpr value = parse_expr(s.items[2]);
        AstExpr rate;
        if ((head == "increase" || head == "decrease") && split_time_product(value, rate)) {
            if (!durative) throw unsupported(s.pos, "#t in an instantaneous action");
            if (when != AstEffect::When::Always)
                throw unsupported(s.pos, "continuous effect inside at-start/at-end wrapper");
            if (expr_contains(rate, AstExpr::Kind::Duration))
                throw unsupported(s.pos, "?duration inside a continuous rate");
            e.kind = AstEffect::Kind::Continuous;
            e.atom = parse_atom(s.items[1]);
            e.value = std::move(rate);
            e.ct_increase = head == "increase";
            out.push_back(std::move(e));
            return;
        }
        if (expr_contains(value, AstExpr::Kind::TimeRate))
            throw unsupported(s.pos, "#t outside a continuous effect");
        e.kind = AstEffect::Kind::Numeric;
        e.num_op = head;
        e.atom = parse_atom(s.items[1]);
        e.value = std::move(value);
        out.push_back(std::move(e));
        return;
    }
    e.kind = AstEffect::Kind::Add;
    e.atom = parse_atom(s);
    out.push_back(std::move(e));
}

void parse_timed_effect(const Sexpr& s, bool durative, std::vector<AstEffect>& out) {
    if (!s.is_list) throw syntax_error(s.pos, "expected an effect");
    if (s.items.empty()) return;
    const std::string& head = s.items[0].atom;
    if (head == "and") {
        for (std::size_t i = 1; i < s.items.size(); ++i) parse_timed_effect(s.items[i], durative, out);
        return;
    }
    if (durative && head == "at" && s.items.size() == 3 && s.items[1].is_atom() &&
        (s.items[1].atom == "start" || s.items[1].atom == "end")) {
        AstEffect::When w =
            s.items[1].atom == "start" ? AstEffect::When::AtStart : AstEffect::When::AtEnd;
        return parse_effect_leaf(s.items[2], w, durative, out);
    }
    if (durative && (head == "increase" || head == "decrease")) {
        // Continuous effects appear without a temporal wrapper.
        return parse_effect_leaf(s, AstEffect::When::Always, durative, out);
    }
    if (durative) throw unsupported(s.pos, "durative effect without a temporal wrapper");
    parse_effect_leaf(s, AstEffect::When::Always, durative, out);
}

std::vector<AstDurationConstraint> parse_duration(const Sexpr& s) {
    std::vector<AstDurationConstraint> out;
    if (!s.is_list || s.items.empty()) throw syntax_error(s.pos, "expected a duration constraint");
    const std::string& head = s.items[0].atom;
    if (head == "and") {
        for (std::size_t i = 1; i < s.items.size(); ++i) {
            auto sub = parse_duration(s.items[i]);
            out.insert(out.end(), sub.begin(), sub.end());
        }
        return out;
    }
    if (!is_comparison_head(head) || s.items.size() != 3)
        throw syntax_error(s.pos, "expected (= ?duration e) or duration inequalities");
    if (!s.items[1].is_atom() || s.items[1].atom != "?duration")
        throw syntax_error(s.items[1].pos, "duration constraint must start with ?duration");
    AstDurationConstraint dc;
    dc.cmp = parse_cmp(head, s.pos);
    if (dc.cmp == AstCmp::Lt || dc.cmp == AstCmp::Gt)
        throw unsupported(s.pos, "strict duration inequality");
    dc.expr = parse_expr(s.items[2]);
    dc.pos = s.pos;
    if (expr_contains(dc.expr, AstExpr::Kind::Duration))
        throw syntax_error(s.pos, "?duration inside its own constraint expression");
    if (expr_contains(dc.expr, AstExpr::Kind::TimeRate))
        throw unsupported(s.pos, "#t inside a duration constraint");
    out.push_back(std::move(dc));
    return out;
}

ActionSchema parse_action(const Sexpr& s, bool durative) {
    ActionSchema a;
    a.durative = durative;
    a.pos = s.pos;
    if (s.items.size() < 2 || !s.items[1].is_atom())
        throw syntax_error(s.pos, "expected an action name");
    a.name = s.items[1].atom;
    std::size_t i = 2;
    while (i < s.items.size()) {
        if (!s.items[i].is_atom() || s.items[i].atom.empty() || s.items[i].atom[0] != ':')
            throw syntax_error(s.items[i].pos, "expected an action keyword");
        const std::string key = s.items[i].atom;
        if (i + 1 >= s.items.size()) throw syntax_error(s.items[i].pos, "missing value for " + key);
        const Sexpr& val = s.items[i + 1];
        if (key == ":parameters") {
            a.params = parse_typed_list(val);
            for (const auto& p : a.params)
                if (p.name.empty() || p.name[0] != '?')
                    throw syntax_error(val.pos, "parameters must be ?variables");
        } else if (key == ":duration") {
            if (!durative) throw syntax_error(val.pos, ":duration in an instantaneous action");
            a.duration = parse_duration(val);
        } else if (key == ":precondition" && !durative) {
            if (val.is_list && val.items.empty()) {
                // vacuous
            } else {
                parse_condition_leaf(val, AstConjunct::When::Always, a.condition);
            }
        } else if (key == ":condition" && durative) {
            parse_timed_condition(val, a.condition);
        } else if (key == ":effect") {
            parse_timed_effect(val, durative, a.effects);
        } else {
            throw unsupported(s.items[i].pos, key);
        }
        i += 2;
    }
    if (durative && a.duration.empty())
        throw syntax_error(s.pos, "durative action '" + a.name + "' needs a :duration");
    return a;
}

}  // namespace

DomainAst parse_domain(const std::string& text) {
    Sexpr top = parse_sexpr(text);
    if (!top.head_is("define") || top.items.size() < 2 || !top.items[1].head_is("domain") ||
        top.items[1].items.size() != 2)
        throw syntax_error(top.pos, "expected (define (domain NAME) ...)");
    DomainAst d;
    d.name = top.items[1].items[1].atom;
    for (std::size_t i = 2; i < top.items.size(); ++i) {
        const Sexpr& sec = top.items[i];
        if (!sec.is_list || sec.items.empty() || !sec.items[0].is_atom())
            throw syntax_error(sec.pos, "expected a domain section");
        const std::string& key = sec.items[0].atom;
        if (key == ":requirements") {
            for (std::size_t j = 1; j < sec.items.size(); ++j) {
                const std::string& tag = sec.items[j].atom;
                if (!kSupportedRequirements.count(tag)) throw unsupported(sec.items[j].pos, tag);
                d.requirements.push_back(tag);
            }
        } else if (key == ":types") {
            d.types = parse_typed_list(sec, 1);
        } else if (key == ":constants") {
            d.constants = parse_typed_list(sec, 1);
        } else if (key == ":predicates") {
            for (std::size_t j = 1; j < sec.items.size(); ++j) {
                const Sexpr& p = sec.items[j];
                if (!p.is_list || p.items.empty() || !p.items[0].is_atom())
                    throw syntax_error(p.pos, "expected a predicate declaration");
                d.predicates.push_back({p.items[0].atom, parse_typed_list(p, 1)});
            }
        } else if (key == ":functions") {
            std::vector<Sexpr> decls;
            for (std::size_t j = 1; j < sec.items.size(); ++j) {
                // Skip optional "- number" return-type markers.
                if (sec.items[j].is_atom() && sec.items[j].atom == "-") {
                    ++j;
                    continue;
                }
                decls.push_back(sec.items[j]);
            }
            for (const Sexpr& f : decls) {
                if (!f.is_list || f.items.empty() || !f.items[0].is_atom())
                    throw syntax_error(f.pos, "expected a function declaration");
                d.functions.push_back({f.items[0].atom, parse_typed_list(f, 1)});
            }
        } else if (key == ":action") {
            d.actions.push_back(parse_action(sec, false));
        } else if (key == ":durative-action") {
            d.actions.push_back(parse_action(sec, true));
        } else if (key == ":process" || key == ":event" || key == ":derived" ||
                   key == ":constraints" || key == ":axiom") {
            throw unsupported(sec.pos, key.substr(1));
        } else {
            throw unsupported(sec.pos, key);
        }
    }
    return d;
}

ProblemAst parse_problem(const std::string& text) {
    Sexpr top = parse_sexpr(text);
    if (!top.head_is("define") || top.items.size() < 2 || !top.items[1].head_is("problem") ||
        top.items[1].items.size() != 2)
        throw syntax_error(top.pos, "expected (define (problem NAME) ...)");
    ProblemAst p;
    p.name = top.items[1].items[1].atom;
    for (std::size_t i = 2; i < top.items.size(); ++i) {
        const Sexpr& sec = top.items[i];
        if (!sec.is_list || sec.items.empty() || !sec.items[0].is_atom())
            throw syntax_error(sec.pos, "expected a problem section");
        const std::string& key = sec.items[0].atom;
        if (key == ":domain") {
            if (sec.items.size() != 2) throw syntax_error(sec.pos, ":domain takes one name");
            p.domain_name = sec.items[1].atom;
        } else if (key == ":objects") {
            p.objects = parse_typed_list(sec, 1);
        } else if (key == ":init") {
            for (std::size_t j = 1; j < sec.items.size(); ++j) {
                const Sexpr& f = sec.items[j];
                if (f.head_is("=")) {
                    if (f.items.size() != 3 || !f.items[2].is_atom())
                        throw syntax_error(f.pos, "expected (= (fluent args) number)");
                    double v;
                    if (!is_number(f.items[2].atom, v))
                        throw syntax_error(f.items[2].pos, "expected a number");
                    p.init_fluents.push_back({parse_atom(f.items[1]), v});
                } else if (f.head_is("at") && f.items.size() == 3 && f.items[1].is_atom()) {
                    double t;
                    if (is_number(f.items[1].atom, t))
                        throw unsupported(f.pos, "timed initial literal");
                    p.init_facts.push_back(parse_atom(f));
                } else {
                    p.init_facts.push_back(parse_atom(f));
                }
            }
        } else if (key == ":goal") {
            if (sec.items.size() != 2) throw syntax_error(sec.pos, ":goal takes one condition");
            if (!(sec.items[1].is_list && sec.items[1].items.empty()))
                parse_condition_leaf(sec.items[1], AstConjunct::When::Always, p.goal);
        } else if (key == ":metric") {
            if (sec.items.size() != 3 || !sec.items[1].is_atom())
                throw syntax_error(sec.pos, "expected (:metric minimize|maximize expr)");
            AstMetric m;
            if (sec.items[1].atom == "minimize")
                m.minimize = true;
            else if (sec.items[1].atom == "maximize")
                m.minimize = false;
            else
                throw syntax_error(sec.items[1].pos, "expected minimize or maximize");
            m.expr = parse_expr(sec.items[2]);
            p.metric = std::move(m);
        } else {
            throw unsupported(sec.pos, key);
        }
    }
    return p;
}

}  // namespace tplan::pddl
