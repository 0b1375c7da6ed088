#include "problem.h"

#include <algorithm>
#include <cmath>

namespace tplan {

const char* cmp_name(Cmp c) {
    switch (c) {
        case Cmp::Lt: return "<";
        case Cmp::Le: return "<=";
        case Cmp::Eq: return "=";
        case Cmp::Ge: return ">=";
        case Cmp::Gt: return ">";
    }
    return "?";
}

bool cmp_holds(double value, Cmp cmp, double rhs, double tol) {
    switch (cmp) {
        case Cmp::Lt: return value < rhs + tol;
        case Cmp::Le: return value <= rhs + tol;
        case Cmp::Eq: return std::fabs(value - rhs) <= tol;
        case Cmp::Ge: return value >= rhs - tol;
        case Cmp::Gt: return value > rhs - tol;
    }
    return false;
}

const char* assign_op_name(AssignOp op) {
    switch (op) {
        case AssignOp::Assign: return "assign";
        case AssignOp::Increase: return "increase";
        case AssignOp::Decrease: return "decrease";
        case AssignOp::ScaleUp: return "scale-up";
        case AssignOp::ScaleDown: return "scale-down";
    }
    return "?";
}

std::vector<int> NumericCondition::fluents() const {
    std::vector<int> out;
    if (is_linear()) {
        for (const auto& [f, c] : expr.terms) out.push_back(f);
    } else {
        nonlinear->collect_fluents(out);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    return out;
}

void Condition::collect_fluents(std::vector<int>& out) const {
    for (const auto& nc : numeric) {
        auto fs = nc.fluents();
        out.insert(out.end(), fs.begin(), fs.end());
    }
}

bool NumericEffect::tree_uses_duration() const {
    if (!nonlinear) return false;
    // Walk the tree looking for a duration leaf.
    struct Walk {
        static bool uses(const ExprNode& n) {
            if (n.op == ExprNode::Op::Duration) return true;
            for (const auto& k : n.kids)
                if (uses(k)) return true;
            return false;
        }
    };
    return Walk::uses(*nonlinear);
}

std::optional<Interval> DurativeAction::constant_duration() const {
    Interval d{0.0, kInf};
    for (const auto& dc : duration) {
        if (dc.nonlinear || !dc.expr.is_constant()) return std::nullopt;
        double v = dc.expr.constant;
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
                return std::nullopt;
        }
    }
    return d;
}

void Problem::build_snaps() {
    snaps.clear();
    for (const auto& a : instants) {
        SnapAction s;
        s.id = static_cast<int>(snaps.size());
        s.point = SnapAction::Point::Instant;
        s.instant_id = a.id;
        s.pre = &a.pre;
        s.eff = &a.eff;
        snaps.push_back(s);
    }
    for (const auto& a : duratives) {
        SnapAction st;
        st.id = static_cast<int>(snaps.size());
        st.point = SnapAction::Point::Start;
        st.durative_id = a.id;
        st.pre = &a.start_cond;
        st.eff = &a.start_eff;
        snaps.push_back(st);
        SnapAction en;
        en.id = static_cast<int>(snaps.size());
        en.point = SnapAction::Point::End;
        en.durative_id = a.id;
        en.pre = &a.end_cond;
        en.eff = &a.end_eff;
        snaps.push_back(en);
    }
}

std::string Problem::snap_name(const SnapAction& s) const {
    if (s.is_instant()) return instants[s.instant_id].name;
    const std::string& base = duratives[s.durative_id].name;
    return base + (s.is_start() ? "|start" : "|end");
}

Bits Problem::condition_fluents() const {
    Bits b(fluent_count());
    std::vector<int> fs;
    for (const auto& a : instants) a.pre.collect_fluents(fs);
    for (const auto& a : duratives) {
        a.start_cond.collect_fluents(fs);
        a.end_cond.collect_fluents(fs);
        a.inv_cond.collect_fluents(fs);
    }
    goal.collect_fluents(fs);
    for (int f : fs) b.set(f);
    return b;
}

Bits Problem::goal_fluents() const {
    Bits b(fluent_count());
    std::vector<int> fs;
    goal.collect_fluents(fs);
    for (int f : fs) b.set(f);
    return b;
}

std::pair<SnapAction, SnapAction> snap_actions(const Problem& p, int durative_id) {
    return {p.snaps[p.start_snap(durative_id)], p.snaps[p.end_snap(durative_id)]};
}

std::vector<int> affected_fluents(const Problem& p, const SnapAction& s) {
    std::vector<int> out;
    for (const auto& e : *s.eff)
        if (e.kind == DiscreteEffect::Kind::Numeric) out.push_back(e.num.fluent);
    if (!s.is_instant())
        for (const auto& ce : p.duratives[s.durative_id].cont_eff) out.push_back(ce.fluent);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace tplan
