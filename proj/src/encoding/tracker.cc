#include "tracker.h"

#include <cmath>

namespace tplan {

NumericState NumericState::initial(const Problem& p) {
    NumericState ns;
    int n = p.fluent_count();
    ns.literals = p.init_fluents;
    ns.literal_mask = Bits(n);
    ns.bounds.resize(n);
    ns.dependent = Bits(n);
    ns.first_dependent_at.assign(n, -1);
    ns.last_effect_at.assign(n, -1);
    for (int f = 0; f < n; ++f) {
        ns.literal_mask.set(f);
        ns.bounds[f] = Interval::point(p.init_fluents[f]);
    }
    return ns;
}

namespace {

// Schedule-dependency of an rvalue: any term over a dependent fluent, or
// a ?duration term of a flexible-duration owner.
bool rvalue_dependent(const LinearExpr& rv, const Bits& dependent, bool duration_flexible) {
    if (rv.duration_coeff != 0.0 && duration_flexible) return true;
    for (const auto& [f, c] : rv.terms)
        if (dependent.test(f)) return true;
    return false;
}

bool tree_dependent(const ExprNode& n, const Bits& dependent, bool duration_flexible) {
    if (n.op == ExprNode::Op::Fluent) return dependent.test(n.fluent);
    if (n.op == ExprNode::Op::Duration) return duration_flexible;
    for (const auto& k : n.kids)
        if (tree_dependent(k, dependent, duration_flexible)) return true;
    return false;
}

}  // namespace

void apply_numeric_transition(const Problem& p, NumericState& ns,
                              std::span<const std::pair<int, double>> context_rates,
                              Interval context_bounds, const SnapAction& snap,
                              Interval duration, int happening_index) {
    // 1. Close the temporal context: continuous change makes values
    // schedule dependent and widens V optimistically.
    for (const auto& [f, rate] : context_rates) {
        if (rate == 0.0) continue;
        ns.bounds[f] = ns.bounds[f] + context_bounds.scaled(rate);
        ns.literal_mask.set(f, false);
        if (!ns.dependent.test(f)) {
            ns.dependent.set(f);
            if (ns.first_dependent_at[f] < 0) ns.first_dependent_at[f] = happening_index;
        }
    }

    // 2. Discrete effects, simultaneous-read: evaluate every rvalue
    // against the pre-effect state first.
    const bool flexible = !duration.is_point(1e-12);
    struct Write {
        int fluent;
        bool dependent;
        double literal;    // when !dependent
        Interval bounds;
    };
    std::vector<Write> writes;
    for (const auto& eff : *snap.eff) {
        if (eff.kind != DiscreteEffect::Kind::Numeric) continue;
        const NumericEffect& ne = eff.num;
        for (const auto& w : writes)
            if (w.fluent == ne.fluent)
                throw DuplicateLvalue("two effects write " + p.fluent_names[ne.fluent] +
                                      " in one happening");

        bool v_dep = ns.dependent.test(ne.fluent);
        Write w;
        w.fluent = ne.fluent;

        if (!ne.is_linear()) {
            if (tree_dependent(*ne.nonlinear, ns.dependent, flexible))
                throw NonlinearUnderSchedule("nonlinear rvalue over schedule-dependent terms in " +
                                             p.snap_name(snap));
            double rv = ne.nonlinear->eval(ns.literals, duration.lb);
            double old = v_dep ? 0 : ns.literals[ne.fluent];
            switch (ne.op) {
                case AssignOp::Assign:
                    w.dependent = false;
                    w.literal = rv;
                    break;
                case AssignOp::Increase:
                case AssignOp::Decrease: {
                    double delta = ne.op == AssignOp::Increase ? rv : -rv;
                    if (v_dep) {
                        w.dependent = true;
                        w.bounds = ns.bounds[ne.fluent].shifted(delta);
                    } else {
                        w.dependent = false;
                        w.literal = old + delta;
                    }
                    break;
                }
                case AssignOp::ScaleUp:
                case AssignOp::ScaleDown: {
                    if (v_dep)
                        throw NonlinearUnderSchedule("scale of schedule-dependent fluent " +
                                                     p.fluent_names[ne.fluent]);
                    if (ne.op == AssignOp::ScaleDown && std::fabs(rv) < 1e-12)
                        throw DivisionByZero("scale-down by zero");
                    w.dependent = false;
                    w.literal = ne.op == AssignOp::ScaleUp ? old * rv : old / rv;
                    break;
                }
            }
            writes.push_back(w);
            continue;
        }

        bool rv_dep = rvalue_dependent(ne.rvalue, ns.dependent, flexible);
        Interval rv_bounds = ne.rvalue.evaluate_interval(ns.bounds, duration);

        switch (ne.op) {
            case AssignOp::Assign:
                if (rv_dep) {
                    w.dependent = true;
                    w.bounds = rv_bounds;
                } else {
                    w.dependent = false;
                    w.literal = ne.rvalue.evaluate(ns.literals, duration.lb);
                }
                break;
            case AssignOp::Increase:
            case AssignOp::Decrease: {
                double sign = ne.op == AssignOp::Increase ? 1.0 : -1.0;
                if (v_dep || rv_dep) {
                    w.dependent = true;
                    w.bounds = ns.bounds[ne.fluent] + rv_bounds.scaled(sign);
                } else {
                    w.dependent = false;
                    w.literal = ns.literals[ne.fluent] +
                                sign * ne.rvalue.evaluate(ns.literals, duration.lb);
                }
                break;
            }
            case AssignOp::ScaleUp:
            case AssignOp::ScaleDown: {
                if (rv_dep)
                    throw NonlinearUnderSchedule("scale rvalue is schedule dependent in " +
                                                 p.snap_name(snap));
                double c = ne.rvalue.evaluate(ns.literals, duration.lb);
                if (ne.op == AssignOp::ScaleDown) {
                    if (std::fabs(c) < 1e-12) throw DivisionByZero("scale-down by zero");
                    c = 1.0 / c;
                }
                if (v_dep) {
                    w.dependent = true;
                    w.bounds = ns.bounds[ne.fluent].scaled(c);
                } else {
                    w.dependent = false;
                    w.literal = ns.literals[ne.fluent] * c;
                }
                break;
            }
        }
        writes.push_back(w);
    }

    for (const auto& w : writes) {
        ns.last_effect_at[w.fluent] = happening_index;
        if (w.dependent) {
            ns.bounds[w.fluent] = w.bounds;
            ns.literal_mask.set(w.fluent, false);
            if (!ns.dependent.test(w.fluent)) {
                ns.dependent.set(w.fluent);
                if (ns.first_dependent_at[w.fluent] < 0)
                    ns.first_dependent_at[w.fluent] = happening_index;
            }
        } else {
            // "v resolves to only one value": leaves the dependent set.
            ns.literals[w.fluent] = w.literal;
            ns.literal_mask.set(w.fluent);
            ns.bounds[w.fluent] = Interval::point(w.literal);
            ns.dependent.set(w.fluent, false);
        }
    }
}

std::vector<std::pair<int, double>> compute_context_rates(
    const Problem& p, const NumericState& ns, std::span<const RunningAction> running) {
    std::vector<std::pair<int, double>> rates;
    auto add = [&](int fluent, double rate) {
        for (auto& [f, r] : rates)
            if (f == fluent) {
                r += rate;
                return;
            }
        rates.emplace_back(fluent, rate);
    };
    for (const auto& ra : running) {
        const DurativeAction& a = p.duratives[ra.durative_id];
        for (const auto& ce : a.cont_eff) {
            double rate;
            if (ce.nonlinear_rate) {
                std::vector<int> fs;
                ce.nonlinear_rate->collect_fluents(fs);
                for (int f : fs)
                    if (ns.dependent.test(f))
                        throw NonconstantRate("rate of " + p.fluent_names[ce.fluent] + " in " +
                                              a.name + " depends on the schedule");
                rate = ce.nonlinear_rate->eval(ns.literals, std::nan(""));
            } else {
                for (const auto& [f, c] : ce.rate.terms)
                    if (ns.dependent.test(f))
                        throw NonconstantRate("rate of " + p.fluent_names[ce.fluent] + " in " +
                                              a.name + " depends on the schedule");
                rate = ce.rate.evaluate(ns.literals);
            }
            add(ce.fluent, rate);
        }
    }
    std::sort(rates.begin(), rates.end());
    rates.erase(std::remove_if(rates.begin(), rates.end(),
                               [](const auto& r) { return r.second == 0.0; }),
                rates.end());
    return rates;
}

}  // namespace tplan
