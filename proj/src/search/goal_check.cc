#include "goal_check.h"

#include "../model/state_ops.h"

namespace tplan {

bool lp_goal_check(const Problem& p, const TemporalState& s, const SearchConfig& cfg,
                   SearchStats& stats, const LpSolver& solver) {
    ++stats.goal_lp_checks;
    EncodeOptions opts;
    opts.mode = cfg.encoding;
    opts.include_goal = true;
    PlanEncoding enc = encode_plan(p, collect_records(s.prefix), opts);
    ConsistencyResult cr = check_consistency(enc, solver, {});
    return cr.verdict == ConsistencyResult::Verdict::Consistent;
}

bool goal_check(const Problem& p, const TemporalState* prev, const SnapRef* applied,
                TemporalState& next, const SearchConfig& cfg, SearchStats& stats,
                const LpSolver& solver) {
    Bits goal_terms = p.goal_fluents();

    // Prime the flag when the applied action touched a schedule-
    // dependent goal fluent; otherwise inherit it.
    bool touched = false;
    if (applied) {
        for (int f : affected_fluents(p, p.snaps[applied->snap_id]))
            if (next.num.dependent.test(f) && goal_terms.test(f)) touched = true;
    }
    next.lpgc = touched || (prev && prev->lpgc);

    if (!next.running.empty()) return false;

    for (const auto& lit : p.goal.literals)
        if (next.facts.test(lit.fact) != lit.positive) return false;
    ++stats.goal_fact_states;

    // Non-schedule-dependent numeric conjuncts have literal values.
    for (const auto& nc : p.goal.numeric) {
        bool dependent = false;
        for (int f : nc.fluents())
            if (next.num.dependent.test(f)) dependent = true;
        if (!dependent && !numeric_holds_literal(nc, next.num.literals)) return false;
    }

    if (!next.num.dependent.intersects(goal_terms)) return true;

    if (cfg.strategy == Strategy::AlwaysLp) {
        return lp_goal_check(p, next, cfg, stats, solver);
    }
    if (next.lpgc) {
        ++stats.goal_candidates;
        next.lpgc = false;
        return lp_goal_check(p, next, cfg, stats, solver);
    }
    return false;
}

}  // namespace tplan
