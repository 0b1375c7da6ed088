#include "oracles.h"

#include <array>
#include <cmath>

namespace tplan::testing {

FloydWarshallResult floyd_warshall(int nodes, const std::vector<StnEdge>& edges) {
    FloydWarshallResult r;
    r.dist.assign(static_cast<std::size_t>(nodes) * nodes, kInf);
    auto at = [&](int i, int j) -> double& { return r.dist[i * nodes + j]; };
    for (int i = 0; i < nodes; ++i) at(i, i) = 0.0;
    for (const auto& e : edges) {
        if (e.ub != kInf) at(e.i, e.j) = std::min(at(e.i, e.j), e.ub);
        if (e.lb != -kInf) at(e.j, e.i) = std::min(at(e.j, e.i), -e.lb);
    }
    for (int k = 0; k < nodes; ++k)
        for (int i = 0; i < nodes; ++i) {
            if (at(i, k) == kInf) continue;
            for (int j = 0; j < nodes; ++j) {
                if (at(k, j) == kInf) continue;
                double c = at(i, k) + at(k, j);
                if (c < at(i, j)) at(i, j) = c;
            }
        }
    for (int i = 0; i < nodes; ++i)
        if (at(i, i) < -1e-9) r.consistent = false;
    return r;
}

namespace {

// Gaussian elimination with partial pivoting for n <= 3.
bool solve_square(int n, std::array<std::array<double, 4>, 3>& m, std::array<double, 3>& x) {
    for (int c = 0; c < n; ++c) {
        int p = c;
        for (int r = c + 1; r < n; ++r)
            if (std::fabs(m[r][c]) > std::fabs(m[p][c])) p = r;
        if (std::fabs(m[p][c]) < 1e-9) return false;
        std::swap(m[p], m[c]);
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            double f = m[r][c] / m[c][c];
            if (f == 0) continue;
            for (int k = c; k <= n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    for (int c = 0; c < n; ++c) x[c] = m[c][n] / m[c][c];
    return true;
}

}  // namespace

VertexEnumResult vertex_enum_solve(const LpModel& model) {
    VertexEnumResult out;
    const int n = static_cast<int>(model.vars.size());

    // Constraint list as equalities a.x = b: rows plus both bounds.
    struct Plane {
        std::array<double, 3> a{0, 0, 0};
        double b = 0;
    };
    std::vector<Plane> planes;
    for (const auto& row : model.rows) {
        Plane p;
        for (const auto& [v, c] : row.coeffs) p.a[v] += c;
        p.b = row.rhs;
        planes.push_back(p);
    }
    for (int v = 0; v < n; ++v) {
        Plane lo;
        lo.a[v] = 1;
        lo.b = model.vars[v].lb;
        planes.push_back(lo);
        Plane hi;
        hi.a[v] = 1;
        hi.b = model.vars[v].ub;
        planes.push_back(hi);
    }

    auto feasible = [&](const std::array<double, 3>& x) {
        for (int v = 0; v < n; ++v) {
            if (x[v] < model.vars[v].lb - kTolerance) return false;
            if (x[v] > model.vars[v].ub + kTolerance) return false;
        }
        for (const auto& row : model.rows) {
            double lhs = 0;
            for (const auto& [v, c] : row.coeffs) lhs += c * x[v];
            switch (row.cmp) {
                case RowCmp::Le:
                    if (lhs > row.rhs + kTolerance) return false;
                    break;
                case RowCmp::Eq:
                    if (std::fabs(lhs - row.rhs) > kTolerance) return false;
                    break;
                case RowCmp::Ge:
                    if (lhs < row.rhs - kTolerance) return false;
                    break;
            }
        }
        return true;
    };

    double sense = 1.0;
    std::array<double, 3> c{0, 0, 0};
    if (model.objective) {
        sense = model.objective->sense == LpModel::Sense::Minimize ? 1.0 : -1.0;
        for (const auto& [v, coef] : model.objective->coeffs) c[v] += coef;
    }

    double best = kInf;
    const int np = static_cast<int>(planes.size());
    // Iterate over all n-subsets of planes.
    auto consider = [&](const std::vector<int>& sel) {
        std::array<std::array<double, 4>, 3> m{};
        for (int r = 0; r < n; ++r) {
            for (int k = 0; k < n; ++k) m[r][k] = planes[sel[r]].a[k];
            m[r][n] = planes[sel[r]].b;
        }
        std::array<double, 3> x{0, 0, 0};
        if (!solve_square(n, m, x)) return;
        if (!std::isfinite(x[0]) || !std::isfinite(x[1]) || !std::isfinite(x[2])) return;
        if (!feasible(x)) return;
        out.feasible = true;
        double val = 0;
        for (int v = 0; v < n; ++v) val += c[v] * x[v];
        best = std::min(best, sense * val);
    };

    if (n == 1) {
        for (int i = 0; i < np; ++i) consider({i});
    } else if (n == 2) {
        for (int i = 0; i < np; ++i)
            for (int j = i + 1; j < np; ++j) consider({i, j});
    } else {
        for (int i = 0; i < np; ++i)
            for (int j = i + 1; j < np; ++j)
                for (int k = j + 1; k < np; ++k) consider({i, j, k});
    }

    if (out.feasible) {
        out.objective = sense * best;
        if (model.objective) out.objective += model.objective->constant;
    }
    return out;
}

}  // namespace tplan::testing
