#include "heuristic.h"

#include <algorithm>
#include <cmath>
#include <deque>

#include "../model/state_ops.h"

namespace tplan {

namespace {

constexpr int kMaxLayers = 64;

struct Rpg {
    Bits facts;
    std::vector<Interval> bounds;
    Bits started;                 // durative actions started in the graph
    std::vector<int> fact_achiever;   // snap id, -1 when true in the state
    std::vector<int> snap_first_layer;  // first layer a snap was applied, -1
};

Interval relaxed_duration(const Problem& p, const DurativeAction& a,
                          const std::vector<Interval>& bounds) {
    Interval d{0.0, kInf};
    for (const auto& dc : a.duration) {
        Interval v;
        if (dc.nonlinear) {
            v = Interval::everything();  // optimistic
        } else {
            v = dc.expr.evaluate_interval(bounds);
        }
        switch (dc.cmp) {
            case Cmp::Eq:
                d.lb = std::max(d.lb, v.lb);
                d.ub = std::min(d.ub, v.ub);
                break;
            case Cmp::Ge:
                d.lb = std::max(d.lb, v.lb);
                break;
            case Cmp::Le:
                d.ub = std::min(d.ub, v.ub);
                break;
            default:
                break;
        }
    }
    if (d.ub < d.lb) d.ub = d.lb;
    return d;
}

// Positive fact literals hold; negative ones are optimistically
// satisfied under the delete-free relaxation.
bool relaxed_condition_holds(const Condition& c, const Rpg& g) {
    for (const auto& lit : c.literals)
        if (lit.positive && !g.facts.test(lit.fact)) return false;
    for (const auto& nc : c.numeric) {
        if (!nc.is_linear()) continue;  // optimistic
        if (!numeric_satisfiable(nc, g.bounds)) return false;
    }
    return true;
}

// Widen bounds with an effect's contribution interval; returns true on
// any change.
bool widen(Interval& b, Interval contribution) {
    bool changed = false;
    double lb = std::min(b.lb, b.lb + contribution.lb);
    double ub = std::max(b.ub, b.ub + contribution.ub);
    if (lb < b.lb - 1e-12) {
        b.lb = lb;
        changed = true;
    }
    if (ub > b.ub + 1e-12) {
        b.ub = ub;
        changed = true;
    }
    return changed;
}

bool apply_relaxed_effects(const Problem& p, Rpg& g, const SnapAction& snap, int snap_id,
                           int layer, Interval duration) {
    bool changed = false;
    for (const auto& eff : *snap.eff) {
        switch (eff.kind) {
            case DiscreteEffect::Kind::AddFact:
                if (!g.facts.test(eff.fact)) {
                    g.facts.set(eff.fact);
                    g.fact_achiever[eff.fact] = snap_id;
                    changed = true;
                }
                break;
            case DiscreteEffect::Kind::DelFact:
                break;  // delete-free
            case DiscreteEffect::Kind::Numeric: {
                const NumericEffect& ne = eff.num;
                Interval& b = g.bounds[ne.fluent];
                Interval rv = ne.is_linear() ? ne.rvalue.evaluate_interval(g.bounds, duration)
                                             : Interval::everything();
                switch (ne.op) {
                    case AssignOp::Assign: {
                        double lb = std::min(b.lb, rv.lb);
                        double ub = std::max(b.ub, rv.ub);
                        if (lb < b.lb - 1e-12 || ub > b.ub + 1e-12) {
                            b.lb = lb;
                            b.ub = ub;
                            changed = true;
                        }
                        break;
                    }
                    case AssignOp::Increase:
                        changed |= widen(b, rv);
                        break;
                    case AssignOp::Decrease:
                        changed |= widen(b, rv.scaled(-1.0));
                        break;
                    case AssignOp::ScaleUp:
                    case AssignOp::ScaleDown: {
                        // Coarse: include the scaled extremes.
                        Interval scaled{std::min({b.lb * rv.lb, b.lb * rv.ub, b.ub * rv.lb}),
                                        std::max({b.ub * rv.ub, b.ub * rv.lb, b.lb * rv.lb})};
                        double lb = std::min(b.lb, scaled.lb);
                        double ub = std::max(b.ub, scaled.ub);
                        if (lb < b.lb - 1e-12 || ub > b.ub + 1e-12) {
                            b.lb = lb;
                            b.ub = ub;
                            changed = true;
                        }
                        break;
                    }
                }
                break;
            }
        }
    }
    // Continuous change contributes rate * duration at the end snap.
    if (snap.is_end()) {
        const DurativeAction& a = p.duratives[snap.durative_id];
        for (const auto& ce : a.cont_eff) {
            Interval rate = ce.nonlinear_rate ? Interval::everything()
                                              : ce.rate.evaluate_interval(g.bounds);
            Interval amount{std::min({rate.lb * duration.lb, rate.lb * duration.ub,
                                      rate.ub * duration.lb, rate.ub * duration.ub}),
                            std::max({rate.lb * duration.lb, rate.lb * duration.ub,
                                      rate.ub * duration.lb, rate.ub * duration.ub})};
            changed |= widen(g.bounds[ce.fluent], amount);
        }
    }
    if (g.snap_first_layer[snap_id] < 0) g.snap_first_layer[snap_id] = layer;
    return changed;
}

}  // namespace

double relaxed_plan_heuristic(const Problem& p, const TemporalState& s) {
    Rpg g;
    g.facts = s.facts;
    g.bounds = s.num.bounds;
    g.started = Bits(static_cast<int>(p.duratives.size()));
    g.fact_achiever.assign(p.fact_count(), -1);
    g.snap_first_layer.assign(static_cast<int>(p.snaps.size()), -1);
    for (const auto& ra : s.running) g.started.set(ra.durative_id);

    std::vector<int> numeric_goal_layer(p.goal.numeric.size(), -1);
    auto note_numeric_goals = [&](int layer) {
        for (std::size_t i = 0; i < p.goal.numeric.size(); ++i) {
            if (numeric_goal_layer[i] >= 0) continue;
            const auto& nc = p.goal.numeric[i];
            bool ok = nc.is_linear() ? numeric_satisfiable(nc, g.bounds)
                                     : true;  // optimistic for nonlinear
            if (ok) numeric_goal_layer[i] = layer;
        }
    };

    auto fact_goals_reached = [&] {
        for (const auto& lit : p.goal.literals)
            if (lit.positive && !g.facts.test(lit.fact)) return false;
        return true;
    };
    auto numeric_goals_reached = [&] {
        return std::all_of(numeric_goal_layer.begin(), numeric_goal_layer.end(),
                           [](int l) { return l >= 0; });
    };

    note_numeric_goals(0);

    int layer = 0;
    bool fixpoint = false;
    while (!(fact_goals_reached() && numeric_goals_reached()) && !fixpoint &&
           layer < kMaxLayers) {
        ++layer;
        bool changed = false;
        for (const auto& a : p.instants) {
            const SnapAction& snap = p.snaps[p.instant_snap(a.id)];
            if (!relaxed_condition_holds(*snap.pre, g)) continue;
            changed |= apply_relaxed_effects(p, g, snap, snap.id, layer, Interval::point(0));
        }
        for (const auto& a : p.duratives) {
            const SnapAction& start = p.snaps[p.start_snap(a.id)];
            Interval dur = relaxed_duration(p, a, g.bounds);
            if (relaxed_condition_holds(*start.pre, g)) {
                changed |= apply_relaxed_effects(p, g, start, start.id, layer, dur);
                if (!g.started.test(a.id)) {
                    g.started.set(a.id);
                    changed = true;
                }
            }
            if (g.started.test(a.id)) {
                const SnapAction& end = p.snaps[p.end_snap(a.id)];
                if (relaxed_condition_holds(*end.pre, g))
                    changed |= apply_relaxed_effects(p, g, end, end.id, layer, dur);
            }
        }
        note_numeric_goals(layer);
        if (!changed) fixpoint = true;
    }

    if (!fact_goals_reached() || !numeric_goals_reached()) {
        if (fixpoint) return kInf;  // provably unreachable under the relaxation
        return 1e6;                 // layer cap hit, keep the state but deprioritize
    }

    // Backchain fact achievers; numeric goals cost their first layer.
    std::vector<char> in_plan(p.snaps.size(), 0);
    std::vector<char> fact_done(p.fact_count(), 0);
    std::deque<int> queue;
    for (const auto& lit : p.goal.literals)
        if (lit.positive) queue.push_back(lit.fact);

    int actions = 0;
    auto need_snap = [&](int snap_id) {
        if (snap_id < 0 || in_plan[snap_id]) return;
        in_plan[snap_id] = 1;
        ++actions;
        const SnapAction& snap = p.snaps[snap_id];
        for (const auto& lit : snap.pre->literals)
            if (lit.positive) queue.push_back(lit.fact);
        // The end snap of a durative action needs its start snap unless
        // the action is already running in the real state.
        if (snap.is_end()) {
            bool running = false;
            for (const auto& ra : s.running)
                if (ra.durative_id == snap.durative_id) running = true;
            int start_id = p.start_snap(snap.durative_id);
            if (!running && !in_plan[start_id]) {
                in_plan[start_id] = 1;
                ++actions;
                for (const auto& lit : p.snaps[start_id].pre->literals)
                    if (lit.positive) queue.push_back(lit.fact);
            }
        }
    };

    while (!queue.empty()) {
        int fact = queue.front();
        queue.pop_front();
        if (fact_done[fact]) continue;
        fact_done[fact] = 1;
        if (s.facts.test(fact)) continue;
        need_snap(g.fact_achiever[fact]);
    }

    double h = actions;
    for (std::size_t i = 0; i < p.goal.numeric.size(); ++i) h += numeric_goal_layer[i];
    return h;
}

}  // namespace tplan
