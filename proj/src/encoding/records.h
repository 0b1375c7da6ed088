#ifndef ENCODING_RECORDS_H
#define ENCODING_RECORDS_H

#include <memory>
#include <vector>

#include "../model/problem.h"
#include "../util/bits.h"

namespace tplan {

struct SnapRef {
    SnapAction::Point point = SnapAction::Point::Instant;
    int snap_id = -1;
    int action_id = -1;  // instant or durative id depending on point
};

struct RunningAction {
    int durative_id = -1;
    int start_index = 0;       // happening index of the start snap (1-based)
    Interval duration;         // duration window evaluated at start
    friend bool operator==(const RunningAction&, const RunningAction&) = default;
};

struct StnRow {
    int i = 0, j = 0;
    double lb = -kInf, ub = kInf;
};

// Everything about one happening that later consistency checks need:
// re-encoding a plan prefix walks these records instead of replaying the
// search. literals/dependent describe the state after the happening;
// context_rates hold the cumulative rate of change per fluent for the
// temporal context that starts here, recomputed from the running set.
struct HappeningRecord {
    int index = 0;  // 1-based
    SnapRef action;
    int start_index = 0;       // for end snaps: happening index of the matching start
    Interval duration;         // for end snaps: the owner's window

    std::vector<StnRow> stn_rows;  // constraints added at this happening (eps, duration, write-backs)

    std::vector<double> literals;
    Bits literal_mask;
    Bits dependent;
    std::vector<std::pair<int, double>> context_rates;  // nonzero cumulative rates
    std::vector<RunningAction> running_after;
};

// Persistent plan prefix; states share ancestors.
struct PrefixNode {
    HappeningRecord rec;
    std::shared_ptr<const PrefixNode> parent;
};

using PrefixPtr = std::shared_ptr<const PrefixNode>;

inline std::vector<const HappeningRecord*> collect_records(const PrefixPtr& prefix) {
    std::vector<const HappeningRecord*> out;
    for (const PrefixNode* n = prefix.get(); n; n = n->parent.get()) out.push_back(&n->rec);
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace tplan

#endif
