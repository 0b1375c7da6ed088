#include "state_ops.h"

#include <cmath>

namespace tplan {

void apply_discrete(std::vector<double>& values, Bits& facts,
                    std::span<const DiscreteEffect> effects, double duration) {
    struct Write {
        int fluent;
        double value;
    };
    std::vector<Write> writes;
    std::vector<int> adds, dels;

    for (const auto& e : effects) {
        switch (e.kind) {
            case DiscreteEffect::Kind::AddFact:
                adds.push_back(e.fact);
                break;
            case DiscreteEffect::Kind::DelFact:
                dels.push_back(e.fact);
                break;
            case DiscreteEffect::Kind::Numeric: {
                const NumericEffect& ne = e.num;
                double rv = ne.is_linear() ? ne.rvalue.evaluate(values, duration)
                                           : ne.nonlinear->eval(values, duration);
                double old = values[ne.fluent];
                double result = 0;
                switch (ne.op) {
                    case AssignOp::Assign:
                        result = rv;
                        break;
                    case AssignOp::Increase:
                        result = old + rv;
                        break;
                    case AssignOp::Decrease:
                        result = old - rv;
                        break;
                    case AssignOp::ScaleUp:
                        result = old * rv;
                        break;
                    case AssignOp::ScaleDown:
                        if (std::fabs(rv) < 1e-12) throw DivisionByZero("scale-down by zero");
                        result = old / rv;
                        break;
                }
                if (ne.op != AssignOp::Assign && std::isnan(old))
                    throw UnboundFluent("update of fluent with no value");
                for (const auto& w : writes)
                    if (w.fluent == ne.fluent)
                        throw DuplicateLvalue("two effects write the same fluent in one happening");
                writes.push_back({ne.fluent, result});
                break;
            }
        }
    }

    for (int f : dels) facts.set(f, false);
    for (int f : adds) facts.set(f, true);
    for (const auto& w : writes) values[w.fluent] = w.value;
}

bool numeric_holds_literal(const NumericCondition& nc, std::span<const double> values, double tol) {
    double v = nc.is_linear() ? nc.expr.evaluate(values)
                              : nc.nonlinear->eval(values, std::nan(""));
    return cmp_holds(v, nc.cmp, nc.rhs, tol);
}

bool holds_literal(const Condition& c, const Bits& facts, std::span<const double> values,
                   double tol) {
    for (const auto& l : c.literals)
        if (facts.test(l.fact) != l.positive) return false;
    for (const auto& nc : c.numeric)
        if (!numeric_holds_literal(nc, values, tol)) return false;
    return true;
}

bool numeric_satisfiable(const NumericCondition& nc, std::span<const Interval> bounds, double tol) {
    Interval v = nc.expr.evaluate_interval(bounds);
    switch (nc.cmp) {
        case Cmp::Lt:
        case Cmp::Le:
            return v.lb <= nc.rhs + tol;
        case Cmp::Eq:
            return v.lb <= nc.rhs + tol && v.ub >= nc.rhs - tol;
        case Cmp::Ge:
        case Cmp::Gt:
            return v.ub >= nc.rhs - tol;
    }
    return false;
}

bool holds_optimistic(const Condition& c, const Bits& facts, std::span<const Interval> bounds,
                      std::span<const double> literal_values, const Bits& literal_mask,
                      double tol) {
    for (const auto& l : c.literals)
        if (facts.test(l.fact) != l.positive) return false;
    for (const auto& nc : c.numeric) {
        if (nc.is_linear()) {
            if (!numeric_satisfiable(nc, bounds, tol)) return false;
        } else {
            // Nonlinear conditions are usable only over literal values.
            for (int f : nc.fluents())
                if (!literal_mask.test(f)) return false;
            if (!numeric_holds_literal(nc, literal_values, tol)) return false;
        }
    }
    return true;
}

}  // namespace tplan
