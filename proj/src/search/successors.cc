#include "successors.h"

#include <algorithm>
#include <cmath>

#include "../model/state_ops.h"

namespace tplan {

TemporalState initial_state(const Problem& p) {
    TemporalState s;
    s.facts = p.init_facts;
    s.num = NumericState::initial(p);
    s.stn = std::make_shared<Stn>();
    return s;
}

namespace {

const SnapAction& snap_of(const Problem& p, const SnapRef& ref) { return p.snaps[ref.snap_id]; }

SnapRef make_ref(const Problem& p, const SnapAction& s) {
    SnapRef r;
    r.point = s.point;
    r.snap_id = s.id;
    r.action_id = s.is_instant() ? s.instant_id : s.durative_id;
    (void)p;
    return r;
}

// Duration window of a durative action evaluated at its start happening,
// over literal values. A schedule-dependent term in a duration
// expression is outside the supported subset.
Interval duration_at_start(const Problem& p, const DurativeAction& a, const NumericState& ns) {
    Interval d{0.0, kInf};
    for (const auto& dc : a.duration) {
        double v;
        if (dc.nonlinear) {
            std::vector<int> fs;
            dc.nonlinear->collect_fluents(fs);
            for (int f : fs)
                if (!ns.literal_mask.test(f))
                    throw NonlinearUnderSchedule("schedule-dependent duration of " + a.name);
            v = dc.nonlinear->eval(ns.literals, std::nan(""));
        } else {
            for (const auto& [f, c] : dc.expr.terms)
                if (!ns.literal_mask.test(f))
                    throw NonlinearUnderSchedule("schedule-dependent duration of " + a.name);
            v = dc.expr.evaluate(ns.literals);
        }
        switch (dc.cmp) {
            case Cmp::Eq:
                d.lb = std::max(d.lb, v);
                d.ub = std::min(d.ub, v);
                break;
            case Cmp::Ge:
                d.lb = std::max(d.lb, v);
                break;
            case Cmp::Le:
                d.ub = std::min(d.ub, v);
                break;
            default:
                break;
        }
    }
    return d;
}

bool effects_falsify_running_invariant(const Problem& p, const TemporalState& s,
                                       const SnapAction& snap) {
    for (const auto& eff : *snap.eff) {
        if (eff.kind == DiscreteEffect::Kind::Numeric) continue;
        bool adds = eff.kind == DiscreteEffect::Kind::AddFact;
        for (const auto& ra : s.running) {
            if (snap.is_end() && ra.durative_id == snap.durative_id) continue;
            for (const auto& lit : p.duratives[ra.durative_id].inv_cond.literals)
                if (lit.fact == eff.fact && lit.positive != adds) return true;
        }
    }
    return false;
}

bool pre_holds_optimistic(const Problem& p, const TemporalState& s, const SnapAction& snap) {
    (void)p;
    return holds_optimistic(*snap.pre, s.facts, s.num.bounds, s.num.literals, s.num.literal_mask);
}

}  // namespace

std::vector<SnapRef> applicable(const Problem& p, const TemporalState& s) {
    std::vector<SnapRef> out;
    for (const auto& a : p.instants) {
        const SnapAction& snap = p.snaps[p.instant_snap(a.id)];
        if (!pre_holds_optimistic(p, s, snap)) continue;
        if (effects_falsify_running_invariant(p, s, snap)) continue;
        out.push_back(make_ref(p, snap));
    }
    for (const auto& a : p.duratives) {
        // At most one concurrent instance of the same grounded action.
        bool already = std::any_of(s.running.begin(), s.running.end(),
                                   [&](const RunningAction& ra) { return ra.durative_id == a.id; });
        if (already) continue;
        const SnapAction& snap = p.snaps[p.start_snap(a.id)];
        if (!pre_holds_optimistic(p, s, snap)) continue;
        if (effects_falsify_running_invariant(p, s, snap)) continue;
        out.push_back(make_ref(p, snap));
    }
    for (const auto& ra : s.running) {
        const SnapAction& snap = p.snaps[p.end_snap(ra.durative_id)];
        if (!pre_holds_optimistic(p, s, snap)) continue;
        if (effects_falsify_running_invariant(p, s, snap)) continue;
        out.push_back(make_ref(p, snap));
    }
    return out;
}

bool needs_lp(const Problem& p, const TemporalState& s, const SnapRef& ref) {
    const SnapAction& snap = snap_of(p, ref);

    // Schedule-dependent fluents at the new happening: the current set
    // plus anything changed by the context being closed.
    Bits dep = s.num.dependent;
    if (s.prefix)
        for (const auto& [f, rate] : s.prefix->rec.context_rates)
            if (rate != 0.0) dep.set(f);

    auto condition_dependent = [&](const Condition& c) {
        for (const auto& nc : c.numeric)
            for (int f : nc.fluents())
                if (dep.test(f)) return true;
        return false;
    };

    // (a) schedule-dependent precondition or invariant
    if (condition_dependent(*snap.pre)) return true;
    if (!snap.is_instant() && condition_dependent(p.duratives[snap.durative_id].inv_cond))
        return true;

    bool flexible = false;
    if (!snap.is_instant()) {
        if (snap.is_start()) {
            auto d = p.duratives[snap.durative_id].constant_duration();
            flexible = !d || !d->is_point(1e-12);
        } else {
            for (const auto& ra : s.running)
                if (ra.durative_id == snap.durative_id) flexible = !ra.duration.is_point(1e-12);
        }
        // (d) starts or ends continuous change
        if (!p.duratives[snap.durative_id].cont_eff.empty()) return true;
    }

    for (const auto& eff : *snap.eff) {
        if (eff.kind != DiscreteEffect::Kind::Numeric) continue;
        const NumericEffect& ne = eff.num;
        // (c) duration-dependent effect of a flexible-duration action
        if (flexible && ne.duration_dependent()) return true;
        // (b) schedule-dependent effect
        if (ne.is_linear()) {
            for (const auto& [f, c] : ne.rvalue.terms)
                if (dep.test(f)) return true;
        } else {
            std::vector<int> fs;
            ne.nonlinear->collect_fluents(fs);
            for (int f : fs)
                if (dep.test(f)) return true;
        }
        // a *= / /= on a dependent fluent must go through the LP error path
        if ((ne.op == AssignOp::ScaleUp || ne.op == AssignOp::ScaleDown) && dep.test(ne.fluent))
            return true;
    }
    return false;
}

ApplyResult apply_happening(const Problem& p, const TemporalState& s, const SnapRef& ref,
                            const SearchConfig& cfg, SearchStats& stats, const LpSolver& solver) {
    const SnapAction& snap = snap_of(p, ref);
    const int k = s.happenings + 1;

    HappeningRecord rec;
    rec.index = k;
    rec.action = ref;

    TemporalState next;
    next.facts = s.facts;
    next.num = s.num;
    next.happenings = k;
    next.running = s.running;
    next.lpgc = s.lpgc;
    next.last_lp_happening = s.last_lp_happening;

    // Duration window: evaluated now for start snaps, recalled from Q
    // for end snaps.
    Interval duration = Interval::point(0.0);
    try {
        if (snap.is_start()) {
            duration = duration_at_start(p, p.duratives[snap.durative_id], s.num);
            rec.duration = duration;
        } else if (snap.is_end()) {
            for (const auto& ra : s.running)
                if (ra.durative_id == snap.durative_id) {
                    duration = ra.duration;
                    rec.start_index = ra.start_index;
                    rec.duration = duration;
                }
        }
    } catch (const EvalError& e) {
        return Pruned{Pruned::Reason::Unsupported, e.what()};
    }

    // Temporal constraints: epsilon separation from the previous
    // happening and the duration edge when an action ends.
    next.stn = std::make_shared<Stn>(*s.stn);
    int node = next.stn->add_happening();
    (void)node;  // node ids track happening indices
    ++stats.stn_checks;
    bool stn_ok = next.stn->add_constraint(k - 1, k, cfg.epsilon, kInf) == Stn::Verdict::Consistent;
    rec.stn_rows.push_back({k - 1, k, cfg.epsilon, kInf});
    if (snap.is_end()) {
        rec.stn_rows.push_back({rec.start_index, k, duration.lb, duration.ub});
        if (stn_ok)
            stn_ok = next.stn->add_constraint(rec.start_index, k, duration.lb, duration.ub) ==
                     Stn::Verdict::Consistent;
    }
    if (!stn_ok) return Pruned{Pruned::Reason::StnInconsistent, "negative cycle"};

    // Numeric and dependency transition for this happening.
    std::span<const std::pair<int, double>> ctx_rates;
    if (s.prefix) ctx_rates = s.prefix->rec.context_rates;
    Interval ctx_bounds = next.stn->bounds(k - 1, k);
    try {
        apply_numeric_transition(p, next.num, ctx_rates, ctx_bounds, snap, duration, k);
    } catch (const NonlinearUnderSchedule& e) {
        return Pruned{Pruned::Reason::Unsupported, e.what()};
    } catch (const EvalError& e) {
        return Pruned{Pruned::Reason::Unsupported, e.what()};
    }

    // Exact precondition check where values are literal at this
    // happening; fluents still changing in the closing context are left
    // to the LP rows. The optimistic interval check in applicable()
    // covered the rest.
    Bits literal_at_k = s.num.literal_mask;
    for (const auto& [f, rate] : ctx_rates)
        if (rate != 0.0) literal_at_k.set(f, false);
    for (const auto& nc : snap.pre->numeric) {
        bool literal = true;
        for (int f : nc.fluents())
            if (!literal_at_k.test(f)) literal = false;
        if (literal && !numeric_holds_literal(nc, s.num.literals))
            return Pruned{Pruned::Reason::Invariant, "precondition fails"};
    }

    // Fact effects.
    for (const auto& eff : *snap.eff) {
        if (eff.kind == DiscreteEffect::Kind::DelFact) next.facts.set(eff.fact, false);
    }
    for (const auto& eff : *snap.eff) {
        if (eff.kind == DiscreteEffect::Kind::AddFact) next.facts.set(eff.fact, true);
    }

    // Q update. Starting an action with continuous effects puts its
    // fluents into the dependent set right away: from here on their
    // value at any later happening varies with the schedule.
    if (snap.is_start()) {
        next.running.push_back({snap.durative_id, k, duration});
        for (const auto& ce : p.duratives[snap.durative_id].cont_eff) {
            if (!next.num.dependent.test(ce.fluent)) {
                next.num.dependent.set(ce.fluent);
                next.num.literal_mask.set(ce.fluent, false);
                if (next.num.first_dependent_at[ce.fluent] < 0)
                    next.num.first_dependent_at[ce.fluent] = k;
            }
        }
    } else if (snap.is_end()) {
        next.running.erase(std::remove_if(next.running.begin(), next.running.end(),
                                          [&](const RunningAction& ra) {
                                              return ra.durative_id == snap.durative_id;
                                          }),
                           next.running.end());
    }

    // Invariants of running actions, where they are checkable exactly:
    // fact invariants and numeric invariants over literal values. The
    // schedule-dependent ones live in the LP rows.
    for (const auto& ra : next.running) {
        const Condition& inv = p.duratives[ra.durative_id].inv_cond;
        for (const auto& lit : inv.literals)
            if (next.facts.test(lit.fact) != lit.positive)
                return Pruned{Pruned::Reason::Invariant,
                              "invariant of " + p.duratives[ra.durative_id].name};
        for (const auto& nc : inv.numeric) {
            bool literal = true;
            for (int f : nc.fluents())
                if (!next.num.literal_mask.test(f)) literal = false;
            if (literal && !numeric_holds_literal(nc, next.num.literals))
                return Pruned{Pruned::Reason::Invariant,
                              "invariant of " + p.duratives[ra.durative_id].name};
        }
    }

    rec.literals = next.num.literals;
    rec.literal_mask = next.num.literal_mask;
    rec.dependent = next.num.dependent;
    rec.running_after = next.running;

    // Selective LP execution.
    bool run_lp = cfg.strategy == Strategy::AlwaysLp || needs_lp(p, s, ref);
    if (run_lp) {
        auto node_ptr = std::make_shared<PrefixNode>();
        node_ptr->rec = rec;  // rates not needed for this happening's own LP
        node_ptr->parent = s.prefix;
        auto records = collect_records(node_ptr);

        EncodeOptions opts;
        opts.mode = cfg.encoding;
        PlanEncoding enc;
        try {
            enc = encode_plan(p, records, opts);
        } catch (const EvalError& e) {
            return Pruned{Pruned::Reason::Unsupported, e.what()};
        }

        std::vector<std::pair<int, int>> pairs;
        if (enc.has_numeric_rows && cfg.write_back) {
            auto add_pair = [&](int i, int j) {
                if (i < 0 || i >= j) return;
                if (next.stn->bounds(i, j).is_point(1e-9)) return;
                for (const auto& pr : pairs)
                    if (pr.first == i && pr.second == j) return;
                pairs.emplace_back(i, j);
            };
            add_pair(0, k);
            for (const auto& ra : next.running) add_pair(ra.start_index, k);
            if (snap.is_end() && !duration.is_point(1e-9)) add_pair(rec.start_index, k);
        }

        ConsistencyResult cr = check_consistency(enc, solver, pairs);
        if (cr.verdict == ConsistencyResult::Verdict::NumericalFailure)
            return Pruned{Pruned::Reason::Unsupported, "LP numerical failure"};
        if (cr.verdict == ConsistencyResult::Verdict::Inconsistent)
            return Pruned{Pruned::Reason::LpInconsistent, "no consistent schedule"};

        // Write back the LP-discovered bounds so later STN-only checks
        // inherit them.
        if (cfg.write_back) {
            for (const auto& t : cr.tightenings) {
                rec.stn_rows.push_back(t);
                if (next.stn->tighten(t.i, t.j, t.lb, t.ub) == Stn::Verdict::Inconsistent)
                    return Pruned{Pruned::Reason::LpInconsistent, "write-back exposed a cycle"};
            }
        }

        // Refresh V for the requested fluent set.
        if (cfg.bounds_mode != BoundsMode::Off && enc.has_numeric_rows) {
            std::vector<int> refresh;
            Bits interesting = cfg.bounds_mode == BoundsMode::All ? next.num.dependent
                                                                  : p.condition_fluents();
            next.num.dependent.for_each([&](int f) {
                if (cfg.bounds_mode == BoundsMode::All || interesting.test(f)) refresh.push_back(f);
            });
            BoundsResult br = extract_bounds(enc, solver, refresh);
            if (br.numerical_failure)
                return Pruned{Pruned::Reason::Unsupported, "LP numerical failure"};
            Bits under_change(p.fluent_count());
            for (const auto& ra : next.running)
                for (const auto& ce : p.duratives[ra.durative_id].cont_eff)
                    under_change.set(ce.fluent);
            for (const auto& [f, b] : br.bounds) {
                next.num.bounds[f] = b;
                if (b.is_point(kResolveTolerance) && !under_change.test(f)) {
                    // The schedule pins this fluent: it resolves to a
                    // single value and leaves the dependent set.
                    next.num.literals[f] = b.mid();
                    next.num.literal_mask.set(f);
                    next.num.dependent.set(f, false);
                }
            }
            rec.literals = next.num.literals;
            rec.literal_mask = next.num.literal_mask;
            rec.dependent = next.num.dependent;
        }
        next.last_lp_happening = k;
    }

    // Cumulative rates for the context that starts here; evaluated after
    // any resolution so rate expressions see fresh literal values.
    try {
        rec.context_rates = compute_context_rates(p, next.num, next.running);
    } catch (const NonconstantRate& e) {
        return Pruned{Pruned::Reason::Unsupported, e.what()};
    }

    auto node_final = std::make_shared<PrefixNode>();
    node_final->rec = std::move(rec);
    node_final->parent = s.prefix;
    next.prefix = node_final;

    ++stats.states_generated;
    return next;
}

}  // namespace tplan
