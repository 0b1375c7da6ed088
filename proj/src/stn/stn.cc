#include "stn.h"

#include <cmath>
#include <sstream>

namespace tplan {

int Stn::add_happening() {
    if (poisoned_) throw PoisonedStn("add_happening on poisoned STN");
    int n = nodes_;
    int m = n + 1;
    std::vector<double> next(m * m, kInf);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) next[i * m + j] = dist_[i * n + j];
    next[n * m + n] = 0.0;
    dist_ = std::move(next);
    nodes_ = m;
    // t_new - z >= 0  ==  z - t_new <= 0, edge new -> origin of weight 0.
    propagate(n, 0, 0.0);
    return n;
}

Stn::Verdict Stn::propagate(int i, int j, double w) {
    if (w >= at(i, j)) return poisoned_ ? Verdict::Inconsistent : Verdict::Consistent;
    int n = nodes_;
    for (int u = 0; u < n; ++u) {
        double du_i = dist_[u * n + i];
        if (du_i == kInf) continue;
        double through = du_i + w;
        const double* dj = &dist_[j * n];
        double* du = &dist_[u * n];
        for (int v = 0; v < n; ++v) {
            double cand = through + dj[v];
            if (cand < du[v]) du[v] = cand;
        }
    }
    for (int u = 0; u < n; ++u) {
        if (dist_[u * n + u] < -1e-9) {
            poisoned_ = true;
            return Verdict::Inconsistent;
        }
    }
    return Verdict::Consistent;
}

Stn::Verdict Stn::add_constraint(int i, int j, double lb, double ub) {
    if (poisoned_) return Verdict::Inconsistent;
    if (ub != kInf) {
        if (propagate(i, j, ub) == Verdict::Inconsistent) return Verdict::Inconsistent;
    }
    if (lb != -kInf) {
        if (propagate(j, i, -lb) == Verdict::Inconsistent) return Verdict::Inconsistent;
    }
    return Verdict::Consistent;
}

Interval Stn::bounds(int i, int j) const {
    if (poisoned_) throw PoisonedStn("bounds on poisoned STN");
    double ub = dist(i, j);
    double lo = dist(j, i);
    return {lo == kInf ? -kInf : -lo, ub};
}

std::string Stn::to_dot() const {
    std::ostringstream os;
    os << "digraph stn {\n";
    for (int i = 0; i < nodes_; ++i) {
        os << "  n" << i << " [label=\"" << (i == 0 ? "z" : "t" + std::to_string(i)) << "\"];\n";
    }
    for (int i = 0; i < nodes_; ++i)
        for (int j = 0; j < nodes_; ++j) {
            if (i == j) continue;
            double w = dist(i, j);
            if (w != kInf) os << "  n" << i << " -> n" << j << " [label=\"" << w << "\"];\n";
        }
    os << "}\n";
    return os.str();
}

}  // namespace tplan
