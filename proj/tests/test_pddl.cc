#include "pddl/parser.h"

#include "doctest.h"
#include "pddl/grounder.h"

using namespace tplan;
using namespace tplan::pddl;

namespace {

const char* kMiniDomain = R"PDDL((define (domain mini)
  (:requirements :typing :durative-actions :fluents :continuous-effects
                 :duration-inequalities :negative-preconditions)
  (:types car location)
  (:predicates (driving-at ?c - car ?l - location) (free ?c - car))
  (:functions (distance ?a ?b - location) (avg-speed ?a ?b - location) (fuel ?c - car)
              (total-traveled ?c - car))
  (:durative-action drive
    :parameters (?c - car ?from ?to - location)
    :duration (= ?duration (/ (distance ?from ?to) (avg-speed ?from ?to)))
    :condition (and (at start (driving-at ?c ?from))
                    (at start (> (distance ?from ?to) 0))
                    (over all (>= (fuel ?c) 1)))
    :effect (and (at start (not (driving-at ?c ?from)))
                 (at end (driving-at ?c ?to))
                 (increase (total-traveled ?c) (* #t (avg-speed ?from ?to)))
                 (decrease (fuel ?c) (* #t (/ (avg-speed ?from ?to) 100))))))
)PDDL";

const char* kMiniProblem = R"PDDL((define (problem mini-1)
  (:domain mini)
  (:objects c1 - car l1 l2 l3 - location)
  (:init (driving-at c1 l1)
         (= (distance l1 l2) 30) (= (avg-speed l1 l2) 60)
         (= (distance l2 l3) 10) (= (avg-speed l2 l3) 50)
         (= (fuel c1) 5) (= (total-traveled c1) 0))
  (:goal (and (driving-at c1 l3))))
)PDDL";

}  // namespace

TEST_CASE("drive listing parses into a durative schema with continuous effects") {
    DomainAst d = parse_domain(kMiniDomain);
    REQUIRE(d.actions.size() == 1);
    const ActionSchema& a = d.actions[0];
    CHECK(a.name == "drive");
    CHECK(a.durative);
    int continuous = 0;
    bool fuel_decrease = false;
    for (const auto& e : a.effects) {
        if (e.kind != AstEffect::Kind::Continuous) continue;
        ++continuous;
        if (e.atom.head == "fuel") {
            fuel_decrease = !e.ct_increase;
            // rate (/ (avg-speed ?from ?to) 100)
            CHECK(e.value.kind == AstExpr::Kind::Div);
        }
    }
    CHECK(continuous == 2);
    CHECK(fuel_decrease);
}

TEST_CASE("minimal instantaneous action with a bare effect") {
    DomainAst d = parse_domain("(define (domain d) (:predicates (p)) "
                               "(:action a :parameters () :effect (p)))");
    REQUIRE(d.actions.size() == 1);
    CHECK_FALSE(d.actions[0].durative);
    CHECK(d.actions[0].condition.empty());
    REQUIRE(d.actions[0].effects.size() == 1);
    CHECK(d.actions[0].effects[0].kind == AstEffect::Kind::Add);
}

TEST_CASE("process blocks are rejected as unsupported") {
    try {
        parse_domain("(define (domain d) (:process heat :parameters ()))");
        FAIL("expected unsupported-feature error");
    } catch (const PddlError& e) {
        CHECK(e.kind == PddlError::Kind::Unsupported);
        CHECK(std::string(e.what()).find("process") != std::string::npos);
        CHECK(e.pos.line >= 1);
    }
}

TEST_CASE("unknown requirement tags are rejected") {
    CHECK_THROWS_AS(parse_domain("(define (domain d) (:requirements :adl))"), PddlError);
}

TEST_CASE("syntax errors carry positions") {
    try {
        parse_domain("(define (domain d)\n  (:action))");
        FAIL("expected syntax error");
    } catch (const PddlError& e) {
        CHECK(e.kind == PddlError::Kind::Syntax);
        CHECK(e.pos.line == 2);
    }
}

TEST_CASE("goal comparisons survive the problem parse") {
    ProblemAst p = parse_problem(R"PDDL((define (problem g1) (:domain gen)
      (:init (= (fuellevel gen) 2))
      (:goal (and (generator-ran) (>= (fuellevel gen) 10)))))PDDL");
    REQUIRE(p.goal.size() == 2);
    CHECK_FALSE(p.goal[0].is_comparison);
    REQUIRE(p.goal[1].is_comparison);
    CHECK(p.goal[1].cmp == AstCmp::Ge);
    CHECK(p.goal[1].lhs.kind == AstExpr::Kind::FluentRef);
    CHECK(p.goal[1].lhs.fluent.head == "fuellevel");
    CHECK(p.goal[1].rhs.number == 10.0);
}

TEST_CASE("empty goal (and) is vacuous") {
    ProblemAst p = parse_problem("(define (problem e) (:domain d) (:goal (and)))");
    CHECK(p.goal.empty());
}

TEST_CASE("parse-print round trip is structurally stable") {
    DomainAst d1 = parse_domain(kMiniDomain);
    std::string once = to_pddl(d1);
    DomainAst d2 = parse_domain(once);
    CHECK(to_pddl(d2) == once);

    ProblemAst p1 = parse_problem(kMiniProblem);
    std::string ponce = to_pddl(p1);
    ProblemAst p2 = parse_problem(ponce);
    CHECK(to_pddl(p2) == ponce);
}

TEST_CASE("identifiers are case-insensitive") {
    ProblemAst p = parse_problem(R"PDDL((define (problem G1) (:domain GEN)
      (:goal (and (>= (fuelLevel GEN) 10)))))PDDL");
    CHECK(p.goal[0].lhs.fluent.head == "fuellevel");
}

TEST_CASE("grounding folds static rates to constants and prunes undeclared pairs") {
    DomainAst d = parse_domain(kMiniDomain);
    ProblemAst p = parse_problem(kMiniProblem);
    Problem g = ground(d, p);

    // Ordered pairs with a declared positive distance: l1->l2 and l2->l3.
    REQUIRE(g.duratives.size() == 2);
    CHECK(g.duratives[0].name == "(drive c1 l1 l2)");
    CHECK(g.duratives[1].name == "(drive c1 l2 l3)");

    const DurativeAction& drive12 = g.duratives[0];
    // Static duration (/ 30 60) folds to 0.5.
    auto dur = drive12.constant_duration();
    REQUIRE(dur.has_value());
    CHECK(dur->lb == doctest::Approx(0.5));
    CHECK(dur->ub == doctest::Approx(0.5));

    // Fuel rate (/ 60 100) folds to the constant 0.6, sign folded in.
    bool found_fuel_rate = false;
    for (const auto& ce : drive12.cont_eff) {
        if (g.fluent_names[ce.fluent] == "(fuel c1)") {
            REQUIRE(ce.rate.is_constant());
            CHECK(ce.rate.constant == doctest::Approx(-0.6));
            found_fuel_rate = true;
        }
    }
    CHECK(found_fuel_rate);

    // Static numeric precondition (> (distance l1 l2) 0) folded away.
    CHECK(drive12.start_cond.numeric.empty());
    // The over-all fuel invariant stays.
    REQUIRE(drive12.inv_cond.numeric.size() == 1);
    CHECK(drive12.inv_cond.numeric[0].cmp == Cmp::Ge);
    CHECK(drive12.inv_cond.numeric[0].rhs == doctest::Approx(1.0));
}

TEST_CASE("one unary schema and two matching objects ground to two actions") {
    DomainAst d = parse_domain(R"PDDL((define (domain u) (:requirements :typing)
      (:types thing) (:predicates (done ?t - thing))
      (:action doit :parameters (?t - thing) :effect (done ?t))))PDDL");
    ProblemAst p = parse_problem(R"PDDL((define (problem u1) (:domain u)
      (:objects a b - thing) (:goal (and (done a)))))PDDL");
    Problem g = ground(d, p);
    REQUIRE(g.instants.size() == 2);
    CHECK(g.instants[0].name == "(doit a)");
    CHECK(g.instants[1].name == "(doit b)");
}

TEST_CASE("grounding is deterministic across runs") {
    DomainAst d = parse_domain(kMiniDomain);
    ProblemAst p = parse_problem(kMiniProblem);
    Problem g1 = ground(d, p);
    Problem g2 = ground(d, p);
    REQUIRE(g1.duratives.size() == g2.duratives.size());
    for (std::size_t i = 0; i < g1.duratives.size(); ++i)
        CHECK(g1.duratives[i].name == g2.duratives[i].name);
    CHECK(g1.fact_names == g2.fact_names);
    CHECK(g1.fluent_names == g2.fluent_names);
}

TEST_CASE("undeclared object in the problem is a grounding-time semantic error") {
    DomainAst d = parse_domain(R"PDDL((define (domain u) (:requirements :typing)
      (:types thing) (:predicates (done ?t - thing))
      (:action doit :parameters (?t - thing) :effect (done ?t))))PDDL");
    // Parses fine...
    ProblemAst p = parse_problem(R"PDDL((define (problem u1) (:domain u)
      (:objects a - thing) (:init (done ghost)) (:goal (and))))PDDL");
    // ...fails only when names are resolved.
    try {
        ground(d, p);
        FAIL("expected semantic error");
    } catch (const PddlError& e) {
        CHECK(e.kind == PddlError::Kind::Semantic);
        CHECK(std::string(e.what()).find("ghost") != std::string::npos);
    }
}

TEST_CASE("every grounded condition references declared facts and fluents") {
    DomainAst d = parse_domain(kMiniDomain);
    ProblemAst p = parse_problem(kMiniProblem);
    Problem g = ground(d, p);
    auto check_condition = [&](const Condition& c) {
        for (const auto& l : c.literals) {
            CHECK(l.fact >= 0);
            CHECK(l.fact < g.fact_count());
        }
        for (const auto& nc : c.numeric)
            for (int f : nc.fluents()) {
                CHECK(f >= 0);
                CHECK(f < g.fluent_count());
            }
    };
    for (const auto& a : g.duratives) {
        check_condition(a.start_cond);
        check_condition(a.end_cond);
        check_condition(a.inv_cond);
    }
    check_condition(g.goal);
}
