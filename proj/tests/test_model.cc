#include "model/state_ops.h"

#include <map>

#include "doctest.h"
#include "pddl/grounder.h"
#include "pddl/parser.h"
#include "util/rng.h"

using namespace tplan;

TEST_CASE("linear expression evaluation") {
    LinearExpr e;
    e.add_term(0, 0.6);
    e.constant = 1.0;
    std::vector<double> vals = {5.0};
    CHECK(e.evaluate(vals) == doctest::Approx(4.0));

    LinearExpr c = LinearExpr::constant_expr(7.0);
    std::vector<double> empty;
    CHECK(c.evaluate(empty) == doctest::Approx(7.0));
}

TEST_CASE("evaluation of an unbound fluent fails") {
    LinearExpr e = LinearExpr::fluent_expr(0);
    std::vector<double> vals = {std::nan("")};
    CHECK_THROWS_AS(e.evaluate(vals), UnboundFluent);
}

TEST_CASE("grounded expressions match an independent tree interpreter") {
    // The oracle evaluates the parsed expression tree directly, without
    // the linearization path.
    using namespace tplan::pddl;
    struct TreeEval {
        static double eval(const AstExpr& e, const std::map<std::string, double>& env) {
            switch (e.kind) {
                case AstExpr::Kind::Number:
                    return e.number;
                case AstExpr::Kind::FluentRef: {
                    std::string key = e.fluent.head;
                    for (const auto& a : e.fluent.args) key += " " + a;
                    return env.at(key);
                }
                default: {
                    std::vector<double> kids;
                    for (const auto& k : e.kids) kids.push_back(eval(k, env));
                    switch (e.kind) {
                        case AstExpr::Kind::Add: {
                            double r = 0;
                            for (double k : kids) r += k;
                            return r;
                        }
                        case AstExpr::Kind::Sub: {
                            if (kids.size() == 1) return -kids[0];
                            double r = kids[0];
                            for (std::size_t i = 1; i < kids.size(); ++i) r -= kids[i];
                            return r;
                        }
                        case AstExpr::Kind::Mul: {
                            double r = 1;
                            for (double k : kids) r *= k;
                            return r;
                        }
                        case AstExpr::Kind::Div:
                            return kids[0] / kids[1];
                        default:
                            return 0;
                    }
                }
            }
        }
    };

    const std::string text = "(+ (* 2 (fuel c1)) (/ (total-traveled c1) 4) -3)";
    AstExpr ast = [&] {
        Sexpr s = parse_sexpr(text);
        // Reuse the domain parser path via a tiny domain wrapper instead of
        // exposing parse_expr; building the expression through a schema.
        // fuel and total-traveled appear as effect lvalues so they stay
        // dynamic and the condition is not folded away.
        std::string dom = "(define (domain x) (:types car) "
                          "(:functions (fuel ?c - car) (total-traveled ?c - car)) "
                          "(:action a :parameters (?c - car) "
                          ":precondition (>= " + text + " 0) "
                          ":effect (and (increase (fuel ?c) 1) (increase (total-traveled ?c) 1))))";
        DomainAst d = parse_domain(dom);
        return d.actions[0].condition[0].lhs;
    }();

    pddl::DomainAst d = pddl::parse_domain(
        "(define (domain x) (:types car) "
        "(:functions (fuel ?c - car) (total-traveled ?c - car)) "
        "(:action a :parameters (?c - car) "
        ":precondition (>= " + text + " 0) "
        ":effect (and (increase (fuel ?c) 1) (increase (total-traveled ?c) 1))))");
    pddl::ProblemAst p = pddl::parse_problem(
        "(define (problem x1) (:domain x) (:objects c1 - car) "
        "(:init (= (fuel c1) 12.5) (= (total-traveled c1) 42)) (:goal (and)))");
    Problem g = pddl::ground(d, p);

    REQUIRE(g.instants.size() == 1);
    REQUIRE(g.instants[0].pre.numeric.size() == 1);
    const NumericCondition& nc = g.instants[0].pre.numeric[0];
    REQUIRE(nc.is_linear());

    std::vector<double> vals(g.fluent_count());
    std::map<std::string, double> env = {{"fuel c1", 12.5}, {"total-traveled c1", 42.0}};
    for (int f = 0; f < g.fluent_count(); ++f) {
        std::string name = g.fluent_names[f].substr(1, g.fluent_names[f].size() - 2);
        vals[f] = env.count(name) ? env[name] : 0.0;
    }

    // Normal form moved the constant to the rhs; compare e - rhs' to the oracle.
    double got = nc.expr.evaluate(vals) - nc.rhs;
    double want = TreeEval::eval(ast, env);
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("apply_discrete basics") {
    Bits facts(2);
    std::vector<double> vals = {10.0};
    NumericEffect dec;
    dec.fluent = 0;
    dec.op = AssignOp::Decrease;
    dec.rvalue = LinearExpr::constant_expr(3.0);
    apply_discrete(vals, facts, std::vector<DiscreteEffect>{DiscreteEffect::numeric(dec)},
                   std::nan(""));
    CHECK(vals[0] == doctest::Approx(7.0));
}

TEST_CASE("simultaneous read: v := w and w := v swap") {
    Bits facts(1);
    std::vector<double> vals = {2.0, 5.0};
    NumericEffect a;
    a.fluent = 0;
    a.op = AssignOp::Assign;
    a.rvalue = LinearExpr::fluent_expr(1);
    NumericEffect b;
    b.fluent = 1;
    b.op = AssignOp::Assign;
    b.rvalue = LinearExpr::fluent_expr(0);
    apply_discrete(vals, facts,
                   std::vector<DiscreteEffect>{DiscreteEffect::numeric(a), DiscreteEffect::numeric(b)},
                   std::nan(""));
    CHECK(vals[0] == doctest::Approx(5.0));
    CHECK(vals[1] == doctest::Approx(2.0));
}

TEST_CASE("deletes apply before adds; duplicate lvalue writes are an error") {
    Bits facts(1);
    facts.set(0);
    std::vector<double> vals;
    std::vector<DiscreteEffect> effs = {DiscreteEffect::del(0), DiscreteEffect::add(0)};
    apply_discrete(vals, facts, effs, std::nan(""));
    CHECK(facts.test(0));

    std::vector<double> v2 = {1.0};
    NumericEffect e1;
    e1.fluent = 0;
    e1.op = AssignOp::Assign;
    e1.rvalue = LinearExpr::constant_expr(2.0);
    std::vector<DiscreteEffect> dup = {DiscreteEffect::numeric(e1), DiscreteEffect::numeric(e1)};
    CHECK_THROWS_AS(apply_discrete(v2, facts, dup, std::nan("")), DuplicateLvalue);
}

TEST_CASE("scale-down by zero is a division error") {
    Bits facts(0);
    std::vector<double> vals = {4.0};
    NumericEffect e;
    e.fluent = 0;
    e.op = AssignOp::ScaleDown;
    e.rvalue = LinearExpr::constant_expr(0.0);
    CHECK_THROWS_AS(
        apply_discrete(vals, facts, std::vector<DiscreteEffect>{DiscreteEffect::numeric(e)},
                       std::nan("")),
        DivisionByZero);
}

TEST_CASE("snap actions carry their endpoint conditions and effects") {
    using namespace tplan::pddl;
    DomainAst d = parse_domain(R"PDDL((define (domain g)
      (:requirements :typing :durative-actions :fluents :continuous-effects :duration-inequalities)
      (:types generator tank)
      (:predicates (generator-running ?g - generator) (tank-full ?t - tank) (generator-ran))
      (:functions (fuellevel ?g - generator) (refuel-rate ?t - tank))
      (:durative-action refuel
        :parameters (?g - generator ?t - tank)
        :duration (and (>= ?duration 8) (<= ?duration 15))
        :condition (and (at start (tank-full ?t)) (over all (generator-running ?g)))
        :effect (and (at start (not (tank-full ?t)))
                     (increase (fuellevel ?g) (* #t (refuel-rate ?t)))))))PDDL");
    ProblemAst p = parse_problem(R"PDDL((define (problem g1) (:domain g)
      (:objects gen - generator t1 - tank)
      (:init (tank-full t1) (generator-running gen) (= (fuellevel gen) 2) (= (refuel-rate t1) 1))
      (:goal (and))))PDDL");
    Problem g = pddl::ground(d, p);
    REQUIRE(g.duratives.size() == 1);

    auto [start, end] = snap_actions(g, 0);
    CHECK(start.is_start());
    CHECK(end.is_end());
    REQUIRE(start.pre->literals.size() == 1);
    CHECK(g.fact_names[start.pre->literals[0].fact] == "(tank-full t1)");
    CHECK(start.eff->size() == 1);
    CHECK(end.pre->empty());
    CHECK(end.eff->empty());

    // Owner carries the [8,15] duration window.
    auto dur = g.duratives[0].constant_duration();
    REQUIRE(dur.has_value());
    CHECK(dur->lb == doctest::Approx(8));
    CHECK(dur->ub == doctest::Approx(15));

    // Recomposing the snaps recovers the owner's endpoint structure.
    CHECK(start.pre == &g.duratives[0].start_cond);
    CHECK(start.eff == &g.duratives[0].start_eff);
    CHECK(end.pre == &g.duratives[0].end_cond);
    CHECK(end.eff == &g.duratives[0].end_eff);

    // affected() includes continuous-effect fluents at both endpoints.
    auto aff = affected_fluents(g, end);
    REQUIRE(aff.size() == 1);
    CHECK(g.fluent_names[aff[0]] == "(fuellevel gen)");
}

TEST_CASE("interval evaluation of conditions is optimistic") {
    NumericCondition nc;
    nc.expr = LinearExpr::fluent_expr(0);
    nc.cmp = Cmp::Ge;
    nc.rhs = 1.0;
    std::vector<Interval> bounds = {{0.5, 4.0}};
    CHECK(numeric_satisfiable(nc, bounds));
    bounds[0] = {0.1, 0.6};
    CHECK_FALSE(numeric_satisfiable(nc, bounds));
}
