#ifndef LP_SIMPLEX_H
#define LP_SIMPLEX_H

#include "lp_model.h"

namespace tplan {

// Bundled dense two-phase simplex. Dantzig pricing with a switch to
// Bland's rule after a degeneracy streak, so it cannot cycle; pivot
// selection is deterministic, so identical models produce identical
// pivot sequences and values. Free variables are handled by bound shift
// and split only when both bounds are infinite.
class SimplexSolver : public LpSolver {
public:
    explicit SimplexSolver(long max_pivots = 1000000) : max_pivots_(max_pivots) {}

    LpSolution solve(const LpModel& model) const override;

private:
    long max_pivots_;
};

}  // namespace tplan

#endif
