#ifndef MODEL_PROBLEM_H
#define MODEL_PROBLEM_H

#include <optional>
#include <string>
#include <vector>

#include "../util/bits.h"
#include "expression.h"

namespace tplan {

enum class Cmp { Lt, Le, Eq, Ge, Gt };

const char* cmp_name(Cmp c);

// Satisfaction of "value cmp rhs" under the shared numeric tolerance.
bool cmp_holds(double value, Cmp cmp, double rhs, double tol = kTolerance);

struct Literal {
    int fact = -1;
    bool positive = true;
    friend bool operator==(const Literal&, const Literal&) = default;
};

// Normal form <e, cmp, k>: constant term of e folded into k. Conditions
// that do not normalize to linear form keep their tree and are usable
// only while every referenced fluent has a literal value.
struct NumericCondition {
    LinearExpr expr;
    Cmp cmp = Cmp::Le;
    double rhs = 0.0;
    ExprTreePtr nonlinear;

    bool is_linear() const { return nonlinear == nullptr; }
    std::vector<int> fluents() const;
};

struct Condition {
    std::vector<Literal> literals;
    std::vector<NumericCondition> numeric;

    bool empty() const { return literals.empty() && numeric.empty(); }
    void collect_fluents(std::vector<int>& out) const;
};

enum class AssignOp { Assign, Increase, Decrease, ScaleUp, ScaleDown };

const char* assign_op_name(AssignOp op);

struct NumericEffect {
    int fluent = -1;
    AssignOp op = AssignOp::Assign;
    LinearExpr rvalue;       // duration_coeff set for duration-dependent effects
    ExprTreePtr nonlinear;   // set when rvalue is not linear

    bool is_linear() const { return nonlinear == nullptr; }
    bool duration_dependent() const {
        return is_linear() ? rvalue.duration_coeff != 0.0 : tree_uses_duration();
    }
    bool tree_uses_duration() const;
};

struct DiscreteEffect {
    enum class Kind { AddFact, DelFact, Numeric };
    Kind kind = Kind::AddFact;
    int fact = -1;
    NumericEffect num;

    static DiscreteEffect add(int fact) { return {Kind::AddFact, fact, {}}; }
    static DiscreteEffect del(int fact) { return {Kind::DelFact, fact, {}}; }
    static DiscreteEffect numeric(NumericEffect e) {
        DiscreteEffect d;
        d.kind = Kind::Numeric;
        d.num = std::move(e);
        return d;
    }
};

// Continuous effect <v, e_t>: v changes at rate e_t while the owning
// action runs. The sign of a decrease is folded into the rate. Rates may
// reference fluents (piecewise-linear change) but never ?duration.
struct ContinuousEffect {
    int fluent = -1;
    LinearExpr rate;
    ExprTreePtr nonlinear_rate;
};

struct DurationConstraint {
    Cmp cmp = Cmp::Eq;  // one of Eq, Le (dur <= expr), Ge (dur >= expr)
    LinearExpr expr;    // evaluated at action start over literal values
    ExprTreePtr nonlinear;
};

struct InstantAction {
    int id = -1;
    std::string name;
    Condition pre;
    std::vector<DiscreteEffect> eff;
};

struct DurativeAction {
    int id = -1;
    std::string name;
    std::vector<DurationConstraint> duration;
    Condition start_cond, end_cond, inv_cond;
    std::vector<DiscreteEffect> start_eff, end_eff;
    std::vector<ContinuousEffect> cont_eff;

    // Duration bounds when every constraint is constant; nullopt otherwise.
    std::optional<Interval> constant_duration() const;
    bool has_fixed_constant_duration() const {
        auto d = constant_duration();
        return d && d->is_point(1e-12);
    }
};

// Instantaneous endpoint of a durative action, or an instantaneous action.
struct SnapAction {
    enum class Point { Instant, Start, End };
    int id = -1;  // dense index into Problem::snaps
    Point point = Point::Instant;
    int instant_id = -1;
    int durative_id = -1;
    const Condition* pre = nullptr;
    const std::vector<DiscreteEffect>* eff = nullptr;

    bool is_instant() const { return point == Point::Instant; }
    bool is_start() const { return point == Point::Start; }
    bool is_end() const { return point == Point::End; }
};

struct Metric {
    bool minimize = true;
    bool makespan = false;  // (total-time)
    LinearExpr expr;
};

// The grounded problem tuple: facts, fluents, actions, initial state,
// goal and optional metric. Fact and fluent ids are dense and stable.
struct Problem {
    std::vector<std::string> fact_names;
    std::vector<std::string> fluent_names;
    std::vector<InstantAction> instants;
    std::vector<DurativeAction> duratives;
    std::vector<SnapAction> snaps;  // instants first, then start/end pairs

    Bits init_facts;
    std::vector<double> init_fluents;

    Condition goal;
    std::optional<Metric> metric;

    int fact_count() const { return static_cast<int>(fact_names.size()); }
    int fluent_count() const { return static_cast<int>(fluent_names.size()); }

    // Indices into snaps: instant i -> i; durative d -> start/end pair.
    int instant_snap(int instant_id) const { return instant_id; }
    int start_snap(int durative_id) const {
        return static_cast<int>(instants.size()) + 2 * durative_id;
    }
    int end_snap(int durative_id) const { return start_snap(durative_id) + 1; }

    void build_snaps();

    std::string snap_name(const SnapAction& s) const;

    // Fluents appearing in any action condition or in the goal; the
    // default bounds-refresh set after an LP run.
    Bits condition_fluents() const;
    Bits goal_fluents() const;
};

std::pair<SnapAction, SnapAction> snap_actions(const Problem& p, int durative_id);

// Fluents written by a snap action: discrete lvalues plus, for snaps of
// durative actions, the owner's continuous-effect fluents.
std::vector<int> affected_fluents(const Problem& p, const SnapAction& s);

}  // namespace tplan

#endif
