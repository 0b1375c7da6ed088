#ifndef SEARCH_TEMPORAL_STATE_H
#define SEARCH_TEMPORAL_STATE_H

#include <memory>
#include <string>
#include <vector>

#include "../encoding/encoder.h"
#include "../encoding/tracker.h"
#include "../stn/stn.h"

namespace tplan {

enum class Strategy { Lazy, AlwaysLp };
enum class BoundsMode { Conditions, All, Off };

struct SearchConfig {
    Strategy strategy = Strategy::Lazy;
    EncodingMode encoding = EncodingMode::Optimized;
    double epsilon = kDefaultEpsilon;
    BoundsMode bounds_mode = BoundsMode::Conditions;
    double timeout_seconds = 1800.0;
    bool write_back = true;
    int max_happenings = 0;         // 0 = unlimited
    double heuristic_weight = 0.0;  // 0 = greedy best-first on h, else f = g + w*h
};

struct SearchStats {
    long states_expanded = 0;
    long states_generated = 0;
    long lp_runs = 0;
    double lp_time_ms = 0.0;
    long stn_checks = 0;
    long goal_lp_checks = 0;     // lpGoalCheck invocations
    long goal_candidates = 0;    // Q empty, nsd goals hold, goal overlap, lpgc set
    long goal_fact_states = 0;   // Q empty and fact goals hold
    int plan_happenings = 0;
    double total_time_ms = 0.0;
};

// The temporal state <F, V, P, Q, C> plus the lpgc flag, the
// schedule-dependency tracker and consistency memoization. P lives as a
// persistent chain of happening records shared between states; C is
// released once the state has been expanded.
struct TemporalState {
    Bits facts;               // F
    NumericState num;         // V plus tracker
    PrefixPtr prefix;         // P
    int happenings = 0;
    std::vector<RunningAction> running;  // Q
    std::shared_ptr<Stn> stn;            // C
    bool lpgc = false;
    int last_lp_happening = 0;

    double h = 0.0;
    long id = 0;
};

struct Pruned {
    enum class Reason { StnInconsistent, LpInconsistent, Invariant, Unsupported };
    Reason reason;
    std::string detail;
};

// Tracks LP solver invocations and wall time for the stats columns.
class CountingSolver : public LpSolver {
public:
    CountingSolver(const LpSolver& inner, SearchStats& stats) : inner_(inner), stats_(stats) {}
    LpSolution solve(const LpModel& model) const override;

private:
    const LpSolver& inner_;
    SearchStats& stats_;
};

}  // namespace tplan

#endif
