#include "search.h"

#include <algorithm>
#include <chrono>
#include <memory>
#include <queue>
#include <unordered_set>

#include "../lp/simplex.h"
#include "goal_check.h"
#include "heuristic.h"
#include "successors.h"

namespace tplan {

const char* status_name(PlanResult::Status s) {
    switch (s) {
        case PlanResult::Status::Solved: return "solved";
        case PlanResult::Status::Unsolvable: return "unsolvable";
        case PlanResult::Status::Timeout: return "timeout";
    }
    return "?";
}

LpSolution CountingSolver::solve(const LpModel& model) const {
    auto t0 = std::chrono::steady_clock::now();
    LpSolution s = inner_.solve(model);
    auto t1 = std::chrono::steady_clock::now();
    ++stats_.lp_runs;
    stats_.lp_time_ms += std::chrono::duration<double, std::milli>(t1 - t0).count();
    return s;
}

namespace {

// Duplicate-detection key: facts, running set, bounds rounded to the
// 1e-6 grid, the dependency tracker signature, and the goal-check flag.
std::size_t state_key(const TemporalState& s) {
    std::size_t h = s.facts.hash();
    auto mix = [&h](std::size_t v) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    std::vector<int> run;
    for (const auto& ra : s.running) run.push_back(ra.durative_id);
    std::sort(run.begin(), run.end());
    for (int r : run) mix(static_cast<std::size_t>(r) + 1);
    mix(0xabcd);
    for (std::size_t f = 0; f < s.num.bounds.size(); ++f) {
        double lb = round_to_grid(s.num.bounds[f].lb);
        double ub = round_to_grid(s.num.bounds[f].ub);
        mix(std::hash<double>{}(lb));
        mix(std::hash<double>{}(ub));
    }
    mix(s.num.dependent.hash());
    mix(s.lpgc ? 2 : 1);
    return h;
}

struct OpenEntry {
    double f;
    int happenings;
    long seq;
    std::shared_ptr<TemporalState> state;
};

struct OpenOrder {
    bool operator()(const OpenEntry& a, const OpenEntry& b) const {
        if (a.f != b.f) return a.f > b.f;
        if (a.happenings != b.happenings) return a.happenings > b.happenings;
        return a.seq > b.seq;
    }
};

}  // namespace

std::vector<PlanStep> schedule(const Problem& p, const TemporalState& goal_state,
                               const SearchConfig& cfg, const LpSolver& solver) {
    auto records = collect_records(goal_state.prefix);
    EncodeOptions opts;
    opts.mode = cfg.encoding;
    opts.include_goal = true;
    PlanEncoding enc = encode_plan(p, records, opts);

    LpModel model = enc.model;
    bool makespan = true;
    if (p.metric && !p.metric->makespan) {
        LinComb obj;
        for (const auto& [f, coeff] : p.metric->expr.terms) obj.add(enc.finals.at(f), coeff);
        obj.c += p.metric->expr.constant;
        model.set_objective(
            p.metric->minimize ? LpModel::Sense::Minimize : LpModel::Sense::Maximize, obj.terms,
            obj.c);
        makespan = false;
    }
    if (makespan && enc.n > 0)
        model.set_objective(LpModel::Sense::Minimize, {{enc.time_var[enc.n], 1.0}});

    LpSolution sol = solver.solve(model);
    if (sol.status != LpSolution::Status::Optimal && !makespan) {
        // Degenerate declared metric (e.g. unbounded): fall back to the
        // makespan objective for concrete timestamps.
        model.set_objective(LpModel::Sense::Minimize, {{enc.time_var[enc.n], 1.0}});
        sol = solver.solve(model);
    }
    if (sol.status != LpSolution::Status::Optimal)
        throw std::runtime_error("final scheduling LP failed unexpectedly");

    std::vector<double> times(enc.n + 1, 0.0);
    for (int k = 0; k <= enc.n; ++k) times[k] = sol.values[enc.time_var[k]];

    std::vector<PlanStep> plan;
    for (int k = 1; k <= enc.n; ++k) {
        const HappeningRecord& rec = *records[k - 1];
        if (rec.action.point == SnapAction::Point::Instant) {
            plan.push_back({times[k], p.instants[rec.action.action_id].name, std::nullopt});
        } else if (rec.action.point == SnapAction::Point::End) {
            plan.push_back({times[rec.start_index], p.duratives[rec.action.action_id].name,
                            times[k] - times[rec.start_index]});
        }
    }
    std::sort(plan.begin(), plan.end(),
              [](const PlanStep& a, const PlanStep& b) { return a.time < b.time; });
    return plan;
}

PlanResult search(const Problem& p, const SearchConfig& cfg) {
    PlanResult out;
    auto started = std::chrono::steady_clock::now();
    auto elapsed_s = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    };

    SimplexSolver base;
    CountingSolver solver(base, out.stats);

    auto finish = [&](PlanResult::Status status) {
        out.status = status;
        out.stats.total_time_ms = elapsed_s() * 1000.0;
        return out;
    };

    auto s0 = std::make_shared<TemporalState>(initial_state(p));
    if (goal_check(p, nullptr, nullptr, *s0, cfg, out.stats, solver)) {
        out.plan.clear();
        out.stats.plan_happenings = 0;
        return finish(PlanResult::Status::Solved);
    }

    std::priority_queue<OpenEntry, std::vector<OpenEntry>, OpenOrder> open;
    std::unordered_set<std::size_t> seen;
    long seq = 0;

    s0->h = relaxed_plan_heuristic(p, *s0);
    seen.insert(state_key(*s0));
    if (s0->h < kInf) open.push({s0->h, 0, seq++, s0});

    while (!open.empty()) {
        if (elapsed_s() > cfg.timeout_seconds) return finish(PlanResult::Status::Timeout);
        auto entry = open.top();
        open.pop();
        TemporalState& s = *entry.state;
        if (cfg.max_happenings > 0 && s.happenings >= cfg.max_happenings) continue;
        ++out.stats.states_expanded;

        for (const SnapRef& ref : applicable(p, s)) {
            ApplyResult res = apply_happening(p, s, ref, cfg, out.stats, solver);
            if (std::holds_alternative<Pruned>(res)) continue;
            auto next = std::make_shared<TemporalState>(std::get<TemporalState>(std::move(res)));
            next->id = seq;

            if (goal_check(p, &s, &ref, *next, cfg, out.stats, solver)) {
                out.plan = schedule(p, *next, cfg, solver);
                out.stats.plan_happenings = next->happenings;
                return finish(PlanResult::Status::Solved);
            }

            std::size_t key = state_key(*next);
            if (seen.count(key)) continue;
            seen.insert(key);

            next->h = relaxed_plan_heuristic(p, *next);
            if (next->h == kInf) continue;
            double f = cfg.heuristic_weight > 0
                           ? next->happenings + cfg.heuristic_weight * next->h
                           : next->h;
            open.push({f, next->happenings, seq++, next});
        }
        s.stn.reset();  // successors have their own copies
    }
    return finish(PlanResult::Status::Unsolvable);
}

}  // namespace tplan
