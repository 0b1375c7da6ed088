#include "micro.h"

namespace tplan::testing {

namespace {

NumericCondition make_numeric(int fluent, Cmp cmp, double rhs) {
    NumericCondition nc;
    nc.expr = LinearExpr::fluent_expr(fluent);
    nc.cmp = cmp;
    nc.rhs = rhs;
    return nc;
}

DiscreteEffect random_numeric_effect(SplitMix64& rng, int fluents) {
    NumericEffect ne;
    ne.fluent = rng.uniform_int(0, fluents - 1);
    int pick = rng.uniform_int(0, 9);
    double c = rng.uniform_int(1, 6);
    if (pick < 4) {
        ne.op = AssignOp::Increase;
        ne.rvalue = LinearExpr::constant_expr(c);
    } else if (pick < 7) {
        ne.op = AssignOp::Decrease;
        ne.rvalue = LinearExpr::constant_expr(c);
    } else if (pick < 9) {
        ne.op = AssignOp::Assign;
        ne.rvalue = LinearExpr::constant_expr(c);
    } else {
        // read another fluent: x := y + c
        ne.op = AssignOp::Assign;
        ne.rvalue = LinearExpr::fluent_expr(rng.uniform_int(0, fluents - 1));
        ne.rvalue.constant = c;
    }
    return DiscreteEffect::numeric(ne);
}

Condition random_condition(SplitMix64& rng, int facts, int fluents, double p_fact,
                           double p_numeric) {
    Condition c;
    if (rng.chance(p_fact)) {
        c.literals.push_back({rng.uniform_int(0, facts - 1), rng.chance(0.8)});
    }
    if (rng.chance(p_numeric)) {
        Cmp cmp = rng.chance(0.5) ? Cmp::Ge : Cmp::Le;
        c.numeric.push_back(make_numeric(rng.uniform_int(0, fluents - 1), cmp,
                                         rng.uniform_int(-2, 14)));
    }
    return c;
}

}  // namespace

Problem random_micro_problem(SplitMix64& rng) {
    Problem p;
    int nfluents = rng.uniform_int(2, 4);
    int nfacts = rng.uniform_int(3, 5);
    for (int f = 0; f < nfluents; ++f) p.fluent_names.push_back("(x" + std::to_string(f) + ")");
    for (int f = 0; f < nfacts; ++f) p.fact_names.push_back("(p" + std::to_string(f) + ")");

    p.init_facts = Bits(nfacts);
    for (int f = 0; f < nfacts; ++f)
        if (rng.chance(0.5)) p.init_facts.set(f);
    for (int f = 0; f < nfluents; ++f) p.init_fluents.push_back(rng.uniform_int(0, 10));

    int nactions = rng.uniform_int(3, 6);
    for (int a = 0; a < nactions; ++a) {
        bool durative = rng.chance(0.6);
        if (!durative) {
            InstantAction ia;
            ia.id = static_cast<int>(p.instants.size());
            ia.name = "(act" + std::to_string(a) + ")";
            ia.pre = random_condition(rng, nfacts, nfluents, 0.7, 0.4);
            ia.eff.push_back(random_numeric_effect(rng, nfluents));
            if (rng.chance(0.7))
                ia.eff.push_back(rng.chance(0.5)
                                     ? DiscreteEffect::add(rng.uniform_int(0, nfacts - 1))
                                     : DiscreteEffect::del(rng.uniform_int(0, nfacts - 1)));
            p.instants.push_back(std::move(ia));
        } else {
            DurativeAction da;
            da.id = static_cast<int>(p.duratives.size());
            da.name = "(dur" + std::to_string(a) + ")";
            DurationConstraint lo, hi;
            double dlo = rng.uniform_int(1, 4);
            double dhi = rng.chance(0.5) ? dlo : dlo + rng.uniform_int(1, 4);
            lo.cmp = Cmp::Ge;
            lo.expr = LinearExpr::constant_expr(dlo);
            hi.cmp = Cmp::Le;
            hi.expr = LinearExpr::constant_expr(dhi);
            da.duration = {lo, hi};
            da.start_cond = random_condition(rng, nfacts, nfluents, 0.6, 0.3);
            da.end_cond = random_condition(rng, nfacts, nfluents, 0.2, 0.3);
            if (rng.chance(0.4)) {
                da.inv_cond.numeric.push_back(
                    make_numeric(rng.uniform_int(0, nfluents - 1),
                                 rng.chance(0.5) ? Cmp::Ge : Cmp::Le, rng.uniform_int(-5, 18)));
            }
            da.start_eff.push_back(rng.chance(0.5)
                                       ? DiscreteEffect::add(rng.uniform_int(0, nfacts - 1))
                                       : DiscreteEffect::del(rng.uniform_int(0, nfacts - 1)));
            if (rng.chance(0.6)) da.start_eff.push_back(random_numeric_effect(rng, nfluents));
            da.end_eff.push_back(DiscreteEffect::add(rng.uniform_int(0, nfacts - 1)));
            if (rng.chance(0.4)) {
                // duration-dependent discrete effect at the end
                NumericEffect ne;
                ne.fluent = rng.uniform_int(0, nfluents - 1);
                ne.op = rng.chance(0.5) ? AssignOp::Increase : AssignOp::Decrease;
                ne.rvalue.duration_coeff = rng.uniform_int(1, 3);
                da.end_eff.push_back(DiscreteEffect::numeric(ne));
            }
            if (rng.chance(0.7)) {
                ContinuousEffect ce;
                ce.fluent = rng.uniform_int(0, nfluents - 1);
                if (rng.chance(0.75)) {
                    ce.rate = LinearExpr::constant_expr(
                        (rng.chance(0.5) ? 1.0 : -1.0) * rng.uniform_int(1, 3));
                } else {
                    // piecewise: the rate reads another fluent
                    ce.rate = LinearExpr::fluent_expr(rng.uniform_int(0, nfluents - 1));
                }
                da.cont_eff.push_back(std::move(ce));
            }
            p.duratives.push_back(std::move(da));
        }
    }

    p.goal = random_condition(rng, nfacts, nfluents, 0.8, 0.7);
    if (p.goal.empty()) p.goal.literals.push_back({0, true});
    p.build_snaps();
    return p;
}

std::vector<TemporalState> random_walk(const Problem& p, SplitMix64& rng, int max_happenings,
                                       SearchStats& stats, const LpSolver& solver) {
    SearchConfig cfg;
    cfg.strategy = Strategy::AlwaysLp;
    cfg.encoding = EncodingMode::Full;

    std::vector<TemporalState> states;
    TemporalState cur = initial_state(p);
    for (int step = 0; step < max_happenings; ++step) {
        auto actions = applicable(p, cur);
        if (actions.empty()) break;
        bool advanced = false;
        // Try candidates in a random rotation until one is consistent.
        int offset = rng.uniform_int(0, static_cast<int>(actions.size()) - 1);
        for (std::size_t t = 0; t < actions.size(); ++t) {
            const SnapRef& ref = actions[(offset + t) % actions.size()];
            ApplyResult res = apply_happening(p, cur, ref, cfg, stats, solver);
            if (std::holds_alternative<Pruned>(res)) continue;
            cur = std::get<TemporalState>(std::move(res));
            states.push_back(cur);
            advanced = true;
            break;
        }
        if (!advanced) break;
    }
    return states;
}

}  // namespace tplan::testing
