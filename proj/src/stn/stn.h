#ifndef STN_STN_H
#define STN_STN_H

#include <stdexcept>
#include <string>
#include <vector>

#include "../util/numbers.h"

namespace tplan {

struct PoisonedStn : std::logic_error {
    using std::logic_error::logic_error;
};

// Incremental Simple Temporal Network over plan happenings. Node 0 is
// the time origin z at t=0. Stores the all-pairs shortest-path matrix of
// the distance graph: dist(i,j) is the tightest upper bound on t_j - t_i.
// Each added edge is propagated in O(n^2), so the matrix stays closed
// and bounds() is O(1). Once a negative cycle appears the network is
// poisoned and only copying from an ancestor is meaningful.
class Stn {
public:
    enum class Verdict { Consistent, Inconsistent };

    Stn() { nodes_ = 1; dist_.assign(1, 0.0); }

    int node_count() const { return nodes_; }
    bool poisoned() const { return poisoned_; }

    // Adds a happening constrained only by t_new - z >= 0; returns its id.
    int add_happening();

    // lb <= t_j - t_i <= ub. Inconsistency is a verdict, not an error.
    Verdict add_constraint(int i, int j, double lb, double ub);

    // Post-LP write-back; identical propagation to add_constraint.
    Verdict tighten(int i, int j, double lb, double ub) { return add_constraint(i, j, lb, ub); }

    // Implied bounds [lb, ub] on t_j - t_i.
    Interval bounds(int i, int j) const;

    double dist(int i, int j) const { return dist_[i * nodes_ + j]; }

    std::string to_dot() const;

private:
    double& at(int i, int j) { return dist_[i * nodes_ + j]; }
    Verdict propagate(int i, int j, double w);

    int nodes_ = 0;
    std::vector<double> dist_;
    bool poisoned_ = false;
};

}  // namespace tplan

#endif
