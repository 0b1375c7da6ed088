#ifndef ENCODING_ENCODER_H
#define ENCODING_ENCODER_H

#include <map>
#include <vector>

#include "../lp/lp_model.h"
#include "records.h"

namespace tplan {

enum class EncodingMode { Full, Optimized };

// Linear combination over LP columns.
struct LinComb {
    std::vector<std::pair<int, double>> terms;
    double c = 0.0;

    bool is_constant() const { return terms.empty(); }
    void add_col(int col, double coeff);
    void add(const LinComb& other, double scale = 1.0);
    void scale(double s);
};

// Mapping from a plan prefix onto an LP.
//
// Full mode mirrors the classic chain: a (v_i, v'_i) pair for every
// happening and every fluent that is ever schedule dependent, linked by
// per-context rate rows and per-happening update rows.
//
// Optimized mode consolidates: value variables exist only at happenings
// with a schedule-dependent update of the fluent; conditions and later
// effects chain to the variable of the last update, with continuous
// accrual inlined as sums of rate * (t_j - t_i) terms; invariant rows
// appear at the action start and only where a change can move the
// constrained expression toward its threshold; literal values fold in as
// constants.
struct PlanEncoding {
    LpModel model;
    int n = 0;                 // happenings
    int m_ever_dependent = 0;  // fluents ever schedule dependent in the prefix
    std::vector<int> time_var;  // happening 0 (origin) .. n -> column

    struct ValueVar {
        int fluent;
        int happening;
        bool post;  // v'_i rather than v_i
        int col;
    };
    std::vector<ValueVar> value_vars;

    std::map<int, LinComb> finals;  // fluent -> value after happening n
    Bits dependent_final;           // fluents still schedule dependent at n
    bool has_numeric_rows = false;  // any row beyond the STN rows

    int value_var_count() const { return static_cast<int>(value_vars.size()); }
    LinComb time_diff(int j, int i) const;  // t_j - t_i
};

struct EncodeOptions {
    EncodingMode mode = EncodingMode::Optimized;
    bool include_goal = false;
};

PlanEncoding encode_plan(const Problem& p, const std::vector<const HappeningRecord*>& records,
                         const EncodeOptions& opts);

inline PlanEncoding encode_full(const Problem& p,
                                const std::vector<const HappeningRecord*>& records,
                                bool include_goal = false) {
    return encode_plan(p, records, {EncodingMode::Full, include_goal});
}
inline PlanEncoding encode_optimized(const Problem& p,
                                     const std::vector<const HappeningRecord*>& records,
                                     bool include_goal = false) {
    return encode_plan(p, records, {EncodingMode::Optimized, include_goal});
}

struct ConsistencyResult {
    enum class Verdict { Consistent, Inconsistent, NumericalFailure };
    Verdict verdict = Verdict::Inconsistent;
    std::vector<StnRow> tightenings;
    long lp_solves = 0;
};

// Feasibility check plus write-back bounds: for each requested happening
// pair, the implied min/max of t_j - t_i under the full constraint set.
ConsistencyResult check_consistency(const PlanEncoding& enc, const LpSolver& solver,
                                    const std::vector<std::pair<int, int>>& tighten_pairs);

struct BoundsResult {
    std::map<int, Interval> bounds;
    bool numerical_failure = false;
    long lp_solves = 0;
};

// Min/max of each fluent's value after the last happening; fluents that
// are not schedule dependent report their literal value without a solve.
BoundsResult extract_bounds(const PlanEncoding& enc, const LpSolver& solver,
                            const std::vector<int>& fluents);

}  // namespace tplan

#endif
