#include "simplex.h"

#include <algorithm>
#include <cmath>
#include <vector>

namespace tplan {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kPhase1Tol = 1e-7;
constexpr int kBlandStreak = 40;

// x = sign * y[col] + shift, or x = y[col] - y[col2] when split.
struct ColMap {
    int col = -1;
    int col2 = -1;
    double shift = 0.0;
    double sign = 1.0;
};

struct Tableau {
    int rows = 0;
    int cols = 0;  // structural + slack + artificial
    std::vector<double> a;  // rows x (cols + 1), last column rhs
    std::vector<double> cost;  // cols + 1
    std::vector<int> basis;
    std::vector<char> active;
    std::vector<char> artificial;

    double& at(int i, int j) { return a[i * (cols + 1) + j]; }
    double& rhs(int i) { return a[i * (cols + 1) + cols]; }

    void pivot(int r, int c) {
        double p = at(r, c);
        double inv = 1.0 / p;
        for (int j = 0; j <= cols; ++j) at(r, j) *= inv;
        at(r, c) = 1.0;
        for (int i = 0; i < rows; ++i) {
            if (i == r || !active[i]) continue;
            double f = at(i, c);
            if (f == 0.0) continue;
            for (int j = 0; j <= cols; ++j) at(i, j) -= f * at(r, j);
            at(i, c) = 0.0;
        }
        double f = cost[c];
        if (f != 0.0) {
            for (int j = 0; j <= cols; ++j) cost[j] -= f * at(r, j);
            cost[c] = 0.0;
        }
        basis[r] = c;
    }
};

enum class LoopResult { Optimal, Unbounded, IterationCap };

LoopResult run_simplex(Tableau& t, bool allow_artificial_entering, long& pivots_left) {
    int degenerate_streak = 0;
    bool bland = false;
    for (;;) {
        int entering = -1;
        if (bland) {
            for (int j = 0; j < t.cols; ++j) {
                if (!allow_artificial_entering && t.artificial[j]) continue;
                if (t.cost[j] < -kCostTol) {
                    entering = j;
                    break;
                }
            }
        } else {
            double best = -kCostTol;
            for (int j = 0; j < t.cols; ++j) {
                if (!allow_artificial_entering && t.artificial[j]) continue;
                if (t.cost[j] < best) {
                    best = t.cost[j];
                    entering = j;
                }
            }
        }
        if (entering < 0) return LoopResult::Optimal;

        int leaving = -1;
        double best_ratio = kInf;
        for (int i = 0; i < t.rows; ++i) {
            if (!t.active[i]) continue;
            double aij = t.at(i, entering);
            if (aij <= kPivotTol) continue;
            double ratio = t.rhs(i) / aij;
            if (ratio < best_ratio - kPivotTol ||
                (ratio < best_ratio + kPivotTol && (leaving < 0 || t.basis[i] < t.basis[leaving]))) {
                best_ratio = ratio;
                leaving = i;
            }
        }
        if (leaving < 0) return LoopResult::Unbounded;

        if (best_ratio < kPivotTol) {
            if (++degenerate_streak > kBlandStreak) bland = true;
        } else {
            degenerate_streak = 0;
            bland = false;
        }

        t.pivot(leaving, entering);
        if (--pivots_left <= 0) return LoopResult::IterationCap;
    }
}

}  // namespace

LpSolution SimplexSolver::solve(const LpModel& model) const {
    LpSolution out;
    const int nx = static_cast<int>(model.vars.size());

    for (const auto& v : model.vars) {
        if (v.lb > v.ub + kPivotTol) {
            out.status = LpSolution::Status::Infeasible;
            return out;
        }
    }

    // Shift and split variables onto the nonnegative orthant.
    std::vector<ColMap> map(nx);
    int ncols = 0;
    struct UpperRow {
        int col;
        double bound;
    };
    std::vector<UpperRow> upper_rows;
    for (int i = 0; i < nx; ++i) {
        const auto& v = model.vars[i];
        if (v.lb != -kInf) {
            map[i] = {ncols++, -1, v.lb, 1.0};
            if (v.ub != kInf) upper_rows.push_back({map[i].col, v.ub - v.lb});
        } else if (v.ub != kInf) {
            map[i] = {ncols++, -1, v.ub, -1.0};
        } else {
            map[i].col = ncols++;
            map[i].col2 = ncols++;
        }
    }
    const int nstruct = ncols;

    // Substitute into rows; normalize to nonnegative rhs.
    struct NormRow {
        std::vector<double> coef;  // dense over structural columns
        RowCmp cmp;
        double rhs;
    };
    std::vector<NormRow> norm;
    norm.reserve(model.rows.size() + upper_rows.size());
    for (const auto& row : model.rows) {
        NormRow r;
        r.coef.assign(nstruct, 0.0);
        r.cmp = row.cmp;
        r.rhs = row.rhs;
        for (const auto& [v, c] : row.coeffs) {
            const ColMap& cm = map[v];
            if (cm.col2 >= 0) {
                r.coef[cm.col] += c;
                r.coef[cm.col2] -= c;
            } else {
                r.coef[cm.col] += c * cm.sign;
                r.rhs -= c * cm.shift;
            }
        }
        bool all_zero = std::all_of(r.coef.begin(), r.coef.end(),
                                    [](double c) { return std::fabs(c) <= kPivotTol; });
        if (all_zero) {
            bool ok = true;
            switch (r.cmp) {
                case RowCmp::Le: ok = 0.0 <= r.rhs + kTolerance; break;
                case RowCmp::Eq: ok = std::fabs(r.rhs) <= kTolerance; break;
                case RowCmp::Ge: ok = 0.0 >= r.rhs - kTolerance; break;
            }
            if (!ok) {
                out.status = LpSolution::Status::Infeasible;
                return out;
            }
            continue;
        }
        if (r.rhs < 0) {
            for (auto& c : r.coef) c = -c;
            r.rhs = -r.rhs;
            r.cmp = r.cmp == RowCmp::Le ? RowCmp::Ge : (r.cmp == RowCmp::Ge ? RowCmp::Le : RowCmp::Eq);
        }
        norm.push_back(std::move(r));
    }
    for (const auto& ur : upper_rows) {
        NormRow r;
        r.coef.assign(nstruct, 0.0);
        r.coef[ur.col] = 1.0;
        r.cmp = RowCmp::Le;
        r.rhs = ur.bound;
        norm.push_back(std::move(r));
    }

    // Count slack and artificial columns.
    const int m = static_cast<int>(norm.size());
    int nslack = 0, nart = 0;
    for (const auto& r : norm) {
        if (r.cmp != RowCmp::Eq) ++nslack;
        if (r.cmp != RowCmp::Le) ++nart;
    }

    Tableau t;
    t.rows = m;
    t.cols = nstruct + nslack + nart;
    t.a.assign(static_cast<std::size_t>(m) * (t.cols + 1), 0.0);
    t.cost.assign(t.cols + 1, 0.0);
    t.basis.assign(m, -1);
    t.active.assign(m, 1);
    t.artificial.assign(t.cols, 0);

    int next_slack = nstruct;
    int next_art = nstruct + nslack;
    for (int i = 0; i < m; ++i) {
        const NormRow& r = norm[i];
        for (int j = 0; j < nstruct; ++j) t.at(i, j) = r.coef[j];
        t.rhs(i) = r.rhs;
        switch (r.cmp) {
            case RowCmp::Le:
                t.at(i, next_slack) = 1.0;
                t.basis[i] = next_slack++;
                break;
            case RowCmp::Ge:
                t.at(i, next_slack) = -1.0;
                ++next_slack;
                t.at(i, next_art) = 1.0;
                t.artificial[next_art] = 1;
                t.basis[i] = next_art++;
                break;
            case RowCmp::Eq:
                t.at(i, next_art) = 1.0;
                t.artificial[next_art] = 1;
                t.basis[i] = next_art++;
                break;
        }
    }

    long pivots_left = max_pivots_;

    // Phase 1: minimize the sum of artificials.
    if (nart > 0) {
        std::fill(t.cost.begin(), t.cost.end(), 0.0);
        for (int j = 0; j < t.cols; ++j)
            if (t.artificial[j]) t.cost[j] = 1.0;
        for (int i = 0; i < m; ++i) {
            if (t.artificial[t.basis[i]]) {
                for (int j = 0; j <= t.cols; ++j) t.cost[j] -= t.at(i, j);
            }
        }
        LoopResult r = run_simplex(t, true, pivots_left);
        if (r == LoopResult::IterationCap) {
            out.status = LpSolution::Status::NumericalFailure;
            return out;
        }
        double phase1 = -t.cost[t.cols];
        if (phase1 > kPhase1Tol) {
            out.status = LpSolution::Status::Infeasible;
            return out;
        }
        // Drive remaining artificials out of the basis.
        for (int i = 0; i < m; ++i) {
            if (!t.active[i] || !t.artificial[t.basis[i]]) continue;
            int col = -1;
            for (int j = 0; j < t.cols; ++j) {
                if (t.artificial[j]) continue;
                if (std::fabs(t.at(i, j)) > kPivotTol) {
                    col = j;
                    break;
                }
            }
            if (col >= 0)
                t.pivot(i, col);
            else
                t.active[i] = 0;  // redundant row
        }
    }

    // Phase 2.
    std::vector<double> obj_coef(nstruct, 0.0);
    if (model.objective) {
        double sense = model.objective->sense == LpModel::Sense::Minimize ? 1.0 : -1.0;
        for (const auto& [v, c] : model.objective->coeffs) {
            const ColMap& cm = map[v];
            if (cm.col2 >= 0) {
                obj_coef[cm.col] += sense * c;
                obj_coef[cm.col2] -= sense * c;
            } else {
                obj_coef[cm.col] += sense * c * cm.sign;
            }
        }
        std::fill(t.cost.begin(), t.cost.end(), 0.0);
        for (int j = 0; j < nstruct; ++j) t.cost[j] = obj_coef[j];
        for (int i = 0; i < m; ++i) {
            if (!t.active[i]) continue;
            double f = t.cost[t.basis[i]];
            if (f == 0.0) continue;
            for (int j = 0; j <= t.cols; ++j) t.cost[j] -= f * t.at(i, j);
        }
        LoopResult r = run_simplex(t, false, pivots_left);
        if (r == LoopResult::IterationCap) {
            out.status = LpSolution::Status::NumericalFailure;
            return out;
        }
        if (r == LoopResult::Unbounded) {
            out.status = LpSolution::Status::Unbounded;
            return out;
        }
    }

    // Extract values.
    std::vector<double> y(t.cols, 0.0);
    for (int i = 0; i < m; ++i)
        if (t.active[i]) y[t.basis[i]] = t.rhs(i);
    out.values.resize(nx);
    for (int i = 0; i < nx; ++i) {
        const ColMap& cm = map[i];
        if (cm.col2 >= 0)
            out.values[i] = y[cm.col] - y[cm.col2];
        else
            out.values[i] = cm.sign * y[cm.col] + cm.shift;
    }
    out.status = LpSolution::Status::Optimal;
    out.objective = 0.0;
    if (model.objective) {
        out.objective = model.objective->constant;
        for (const auto& [v, c] : model.objective->coeffs) out.objective += c * out.values[v];
    }
    return out;
}

}  // namespace tplan
