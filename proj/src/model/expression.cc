#include "expression.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace tplan {

namespace {
constexpr double kZeroCoeff = 1e-12;
}

bool LinearExpr::references(int fluent) const {
    for (const auto& [f, c] : terms)
        if (f == fluent) return true;
    return false;
}

double LinearExpr::coefficient(int fluent) const {
    for (const auto& [f, c] : terms)
        if (f == fluent) return c;
    return 0.0;
}

void LinearExpr::add_term(int fluent, double coeff) {
    terms.emplace_back(fluent, coeff);
    normalize();
}

void LinearExpr::add(const LinearExpr& other, double s) {
    for (const auto& [f, c] : other.terms) terms.emplace_back(f, c * s);
    duration_coeff += other.duration_coeff * s;
    constant += other.constant * s;
    normalize();
}

void LinearExpr::scale(double c) {
    for (auto& [f, coeff] : terms) coeff *= c;
    duration_coeff *= c;
    constant *= c;
    normalize();
}

void LinearExpr::normalize() {
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<int, double>> merged;
    for (const auto& [f, c] : terms) {
        if (!merged.empty() && merged.back().first == f)
            merged.back().second += c;
        else
            merged.emplace_back(f, c);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const auto& t) { return std::fabs(t.second) <= kZeroCoeff; }),
                 merged.end());
    terms = std::move(merged);
    if (std::fabs(duration_coeff) <= kZeroCoeff) duration_coeff = 0.0;
}

double LinearExpr::evaluate(std::span<const double> values) const {
    if (duration_coeff != 0.0)
        throw EvalError("expression references ?duration outside a durative context");
    double r = constant;
    for (const auto& [f, c] : terms) {
        double v = values[f];
        if (std::isnan(v)) throw UnboundFluent("fluent " + std::to_string(f) + " has no value");
        r += c * v;
    }
    return r;
}

double LinearExpr::evaluate(std::span<const double> values, double duration) const {
    double r = constant;
    if (duration_coeff != 0.0) r += duration_coeff * duration;
    for (const auto& [f, c] : terms) {
        double v = values[f];
        if (std::isnan(v)) throw UnboundFluent("fluent " + std::to_string(f) + " has no value");
        r += c * v;
    }
    return r;
}

Interval LinearExpr::evaluate_interval(std::span<const Interval> values, Interval duration) const {
    Interval r = Interval::point(constant);
    for (const auto& [f, c] : terms) r = r + values[f].scaled(c);
    if (duration_coeff != 0.0) r = r + duration.scaled(duration_coeff);
    return r;
}

std::string LinearExpr::to_string(const std::vector<std::string>& fluent_names) const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [f, c] : terms) {
        if (!first) os << " + ";
        os << c << "*" << fluent_names[f];
        first = false;
    }
    if (duration_coeff != 0.0) {
        if (!first) os << " + ";
        os << duration_coeff << "*?duration";
        first = false;
    }
    if (first || constant != 0.0) {
        if (!first) os << " + ";
        os << constant;
    }
    return os.str();
}

double ExprNode::eval(std::span<const double> values, double duration) const {
    switch (op) {
        case Op::Const:
            return value;
        case Op::Fluent: {
            double v = values[fluent];
            if (std::isnan(v))
                throw UnboundFluent("fluent " + std::to_string(fluent) + " has no value");
            return v;
        }
        case Op::Duration:
            if (std::isnan(duration)) throw EvalError("?duration not available here");
            return duration;
        case Op::Add: {
            double r = 0;
            for (const auto& k : kids) r += k.eval(values, duration);
            return r;
        }
        case Op::Sub: {
            if (kids.size() == 1) return -kids[0].eval(values, duration);
            double r = kids[0].eval(values, duration);
            for (std::size_t i = 1; i < kids.size(); ++i) r -= kids[i].eval(values, duration);
            return r;
        }
        case Op::Mul: {
            double r = 1;
            for (const auto& k : kids) r *= k.eval(values, duration);
            return r;
        }
        case Op::Div: {
            double a = kids[0].eval(values, duration);
            double b = kids[1].eval(values, duration);
            if (std::fabs(b) < 1e-12) throw DivisionByZero("division by zero");
            return a / b;
        }
        case Op::Neg:
            return -kids[0].eval(values, duration);
    }
    return 0;
}

void ExprNode::collect_fluents(std::vector<int>& out) const {
    if (op == Op::Fluent) out.push_back(fluent);
    for (const auto& k : kids) k.collect_fluents(out);
}

}  // namespace tplan
