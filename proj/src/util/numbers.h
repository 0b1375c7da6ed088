#ifndef UTIL_NUMBERS_H
#define UTIL_NUMBERS_H

#include <algorithm>
#include <cmath>
#include <limits>

namespace tplan {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Numeric-condition satisfaction and LP feasibility tolerance.
inline constexpr double kTolerance = 1e-6;

// A fluent whose bounds differ by no more than this has resolved to a
// single value.
inline constexpr double kResolveTolerance = 1e-9;

// Minimum gap enforced between consecutive happenings.
inline constexpr double kDefaultEpsilon = 0.001;

struct Interval {
    double lb = -kInf;
    double ub = kInf;

    static Interval point(double v) { return {v, v}; }
    static Interval everything() { return {-kInf, kInf}; }

    bool is_point(double tol = kResolveTolerance) const {
        return std::isfinite(lb) && std::isfinite(ub) && ub - lb <= tol;
    }
    double mid() const { return 0.5 * (lb + ub); }
    bool contains(double v, double tol = kTolerance) const {
        return v >= lb - tol && v <= ub + tol;
    }
    bool subset_of(const Interval& o, double tol = kTolerance) const {
        return lb >= o.lb - tol && ub <= o.ub + tol;
    }
    Interval shifted(double d) const { return {lb + d, ub + d}; }
    Interval scaled(double c) const {
        if (c >= 0) return {lb * c, ub * c};
        return {ub * c, lb * c};
    }
    Interval operator+(const Interval& o) const { return {lb + o.lb, ub + o.ub}; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

inline double round_to_grid(double v, double grid = 1e-6) {
    if (!std::isfinite(v)) return v;
    return std::round(v / grid) * grid;
}

}  // namespace tplan

#endif
