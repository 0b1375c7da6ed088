#ifndef MODEL_EXPRESSION_H
#define MODEL_EXPRESSION_H

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "../util/numbers.h"

namespace tplan {

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnboundFluent : EvalError {
    using EvalError::EvalError;
};
struct DivisionByZero : EvalError {
    using EvalError::EvalError;
};

// Normalized linear expression over grounded fluents:
//   sum(coeff_i * fluent_i) + duration_coeff * ?duration + constant.
// Terms are sorted by fluent id with no duplicates and no zero coefficients.
// The duration term is only meaningful inside effects of durative actions.
struct LinearExpr {
    std::vector<std::pair<int, double>> terms;
    double duration_coeff = 0.0;
    double constant = 0.0;

    static LinearExpr constant_expr(double c) {
        LinearExpr e;
        e.constant = c;
        return e;
    }
    static LinearExpr fluent_expr(int fluent, double coeff = 1.0) {
        LinearExpr e;
        e.terms.emplace_back(fluent, coeff);
        return e;
    }

    bool is_constant() const { return terms.empty() && duration_coeff == 0.0; }
    bool references(int fluent) const;
    double coefficient(int fluent) const;

    void add_term(int fluent, double coeff);
    void add(const LinearExpr& other, double scale = 1.0);
    void scale(double c);
    void normalize();

    double evaluate(std::span<const double> values) const;
    double evaluate(std::span<const double> values, double duration) const;
    Interval evaluate_interval(std::span<const Interval> values,
                               Interval duration = Interval::point(0.0)) const;

    std::string to_string(const std::vector<std::string>& fluent_names) const;

    friend bool operator==(const LinearExpr&, const LinearExpr&) = default;
};

// Expression tree kept for grounded expressions that do not normalize to
// linear form. Evaluated against literal fluent values only.
struct ExprNode {
    enum class Op { Const, Fluent, Duration, Add, Sub, Mul, Div, Neg };

    Op op = Op::Const;
    double value = 0.0;
    int fluent = -1;
    std::vector<ExprNode> kids;

    double eval(std::span<const double> values, double duration) const;
    void collect_fluents(std::vector<int>& out) const;
};

using ExprTreePtr = std::shared_ptr<const ExprNode>;

}  // namespace tplan

#endif
