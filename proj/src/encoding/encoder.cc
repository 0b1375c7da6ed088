#include "encoder.h"

#include <algorithm>
#include <cmath>

#include "tracker.h"

namespace tplan {

void LinComb::add_col(int col, double coeff) {
    for (auto& [c, v] : terms) {
        if (c == col) {
            v += coeff;
            if (std::fabs(v) < 1e-12) {
                terms.erase(std::remove_if(terms.begin(), terms.end(),
                                           [col](const auto& t) { return t.first == col; }),
                            terms.end());
            }
            return;
        }
    }
    if (std::fabs(coeff) >= 1e-12) terms.emplace_back(col, coeff);
}

void LinComb::add(const LinComb& other, double s) {
    for (const auto& [col, v] : other.terms) add_col(col, v * s);
    c += other.c * s;
}

void LinComb::scale(double s) {
    for (auto& [col, v] : terms) v *= s;
    c *= s;
}

LinComb PlanEncoding::time_diff(int j, int i) const {
    LinComb lc;
    lc.add_col(time_var[j], 1.0);
    lc.add_col(time_var[i], -1.0);
    return lc;
}

namespace {

struct Span {
    int durative_id = -1;
    int start = 0;
    int end = -1;  // -1 while still running at the end of the prefix
};

RowCmp to_row_cmp(Cmp c) {
    switch (c) {
        case Cmp::Lt:
        case Cmp::Le:
            return RowCmp::Le;
        case Cmp::Eq:
            return RowCmp::Eq;
        case Cmp::Ge:
        case Cmp::Gt:
            return RowCmp::Ge;
    }
    return RowCmp::Eq;
}

class Encoder {
public:
    Encoder(const Problem& p, const std::vector<const HappeningRecord*>& recs,
            const EncodeOptions& opts)
        : p_(p), recs_(recs), opts_(opts) {}

    PlanEncoding run() {
        const int n = static_cast<int>(recs_.size());
        out_.n = n;

        ever_dependent_ = Bits(p_.fluent_count());
        for (const auto* rec : recs_)
            rec->dependent.for_each([&](int f) { ever_dependent_.set(f); });
        out_.m_ever_dependent = ever_dependent_.count();
        out_.dependent_final = n ? recs_.back()->dependent : Bits(p_.fluent_count());

        out_.time_var.resize(n + 1);
        out_.time_var[0] = out_.model.add_var("t0", 0.0, 0.0);
        for (int k = 1; k <= n; ++k)
            out_.time_var[k] = out_.model.add_var("t" + std::to_string(k), 0.0, kInf);

        for (const auto* rec : recs_) {
            for (const auto& row : rec->stn_rows) {
                if (row.ub != kInf)
                    add_row(out_.time_diff(row.j, row.i), RowCmp::Le, row.ub, false);
                if (row.lb != -kInf)
                    add_row(out_.time_diff(row.j, row.i), RowCmp::Ge, row.lb, false);
            }
        }

        track_.resize(p_.fluent_count());
        for (int f = 0; f < p_.fluent_count(); ++f) {
            track_[f].value.c = p_.init_fluents[f];
            track_[f].literal = true;
        }

        build_spans();

        for (int k = 1; k <= n; ++k) encode_happening(k);

        for (int f = 0; f < p_.fluent_count(); ++f) out_.finals[f] = track_[f].value;

        if (opts_.include_goal)
            for (const auto& nc : p_.goal.numeric) maybe_condition_row(nc);

        out_.has_numeric_rows = has_numeric_rows_;
        return std::move(out_);
    }

private:
    struct Track {
        LinComb value;
        bool literal = true;
    };

    void add_row(LinComb comb, RowCmp cmp, double rhs, bool numeric = true) {
        rhs -= comb.c;
        out_.model.add_row(std::move(comb.terms), cmp, rhs);
        if (numeric) has_numeric_rows_ = true;
    }

    void build_spans() {
        for (int k = 1; k <= static_cast<int>(recs_.size()); ++k) {
            const HappeningRecord& rec = *recs_[k - 1];
            if (rec.action.point == SnapAction::Point::Start) {
                spans_.push_back({rec.action.action_id, k, -1});
            } else if (rec.action.point == SnapAction::Point::End) {
                for (auto& s : spans_)
                    if (s.end < 0 && s.start == rec.start_index &&
                        s.durative_id == rec.action.action_id)
                        s.end = k;
            }
        }
    }

    bool any_tracked_nonliteral(const NumericCondition& nc) const {
        if (nc.is_linear()) {
            for (const auto& [f, c] : nc.expr.terms)
                if (!track_[f].literal) return true;
            return false;
        }
        std::vector<int> fs;
        nc.nonlinear->collect_fluents(fs);
        for (int f : fs)
            if (!track_[f].literal) return true;
        return false;
    }

    // Emits the condition over the current value expressions; literal
    // conditions stay with the search's exact checks.
    void maybe_condition_row(const NumericCondition& nc) {
        if (!any_tracked_nonliteral(nc)) return;
        if (!nc.is_linear())
            throw NonlinearUnderSchedule("nonlinear condition over schedule-dependent fluents");
        LinComb comb;
        for (const auto& [f, coeff] : nc.expr.terms) comb.add(track_[f].value, coeff);
        add_row(std::move(comb), to_row_cmp(nc.cmp), nc.rhs);
    }

    double context_rate_of(const NumericCondition& nc,
                           std::span<const std::pair<int, double>> rates) const {
        if (!nc.is_linear()) return 0.0;
        double r = 0.0;
        for (const auto& [f, coeff] : nc.expr.terms)
            for (const auto& [rf, rate] : rates)
                if (rf == f) r += coeff * rate;
        return r;
    }

    static bool moves_toward_threshold(Cmp cmp, double rate) {
        switch (cmp) {
            case Cmp::Lt:
            case Cmp::Le:
                return rate > kResolveTolerance;
            case Cmp::Ge:
            case Cmp::Gt:
                return rate < -kResolveTolerance;
            case Cmp::Eq:
                return std::fabs(rate) > kResolveTolerance;
        }
        return true;
    }

    // Rvalue as a combination over current (pre-effect) value
    // expressions; ?duration becomes t_k - t_start of the owner.
    LinComb rvalue_comb(const NumericEffect& ne, const std::vector<Track>& snapshot, int k,
                        int owner_start) const {
        LinComb comb;
        comb.c = ne.rvalue.constant;
        for (const auto& [f, coeff] : ne.rvalue.terms) comb.add(snapshot[f].value, coeff);
        if (ne.rvalue.duration_coeff != 0.0) {
            comb.add(out_.time_diff(k, owner_start), ne.rvalue.duration_coeff);
        }
        return comb;
    }

    // Whether the discrete effects at this happening can move the
    // invariant expression toward its threshold. Unknown directions
    // (assignments, non-constant deltas) count as potentially violating.
    bool discrete_violates(const NumericCondition& nc, const SnapAction& snap,
                           const std::vector<Track>& snapshot, int k, int owner_start) const {
        if (!nc.is_linear()) return true;
        for (const auto& eff : *snap.eff) {
            if (eff.kind != DiscreteEffect::Kind::Numeric) continue;
            double coeff = nc.expr.coefficient(eff.num.fluent);
            if (coeff == 0.0) continue;
            if (eff.num.op == AssignOp::Assign || eff.num.op == AssignOp::ScaleUp ||
                eff.num.op == AssignOp::ScaleDown || !eff.num.is_linear())
                return true;
            LinComb rv = rvalue_comb(eff.num, snapshot, k, owner_start);
            if (!rv.is_constant()) return true;
            double delta = coeff * rv.c * (eff.num.op == AssignOp::Increase ? 1.0 : -1.0);
            if (moves_toward_threshold(nc.cmp, delta)) return true;
        }
        return false;
    }

    int new_value_var(int fluent, int k, bool post) {
        std::string name = (post ? "w" : "v") + std::to_string(fluent) + "_" + std::to_string(k);
        int col = out_.model.add_var(std::move(name));
        out_.value_vars.push_back({fluent, k, post, col});
        return col;
    }

    void encode_happening(int k) {
        const HappeningRecord& rec = *recs_[k - 1];
        const SnapAction& snap = p_.snaps[rec.action.snap_id];
        std::span<const std::pair<int, double>> ctx_rates;
        if (k >= 2) ctx_rates = recs_[k - 2]->context_rates;

        // Close the temporal context (k-1, k).
        if (opts_.mode == EncodingMode::Full) {
            ever_dependent_.for_each([&](int f) {
                LinComb incoming = track_[f].value;
                for (const auto& [rf, rate] : ctx_rates)
                    if (rf == f) incoming.add(out_.time_diff(k, k - 1), rate);
                int col = new_value_var(f, k, false);
                incoming.add_col(col, -1.0);
                add_row(std::move(incoming), RowCmp::Eq, 0.0);
                track_[f].value = LinComb{};
                track_[f].value.add_col(col, 1.0);
                track_[f].literal = false;
            });
        } else {
            for (const auto& [f, rate] : ctx_rates) {
                track_[f].value.add(out_.time_diff(k, k - 1), rate);
                track_[f].literal = false;
            }
        }

        // Invariants checked against the value before this happening.
        for (const auto& span : spans_) {
            if (!(span.start < k && (span.end < 0 || k <= span.end))) continue;
            const Condition& inv = p_.duratives[span.durative_id].inv_cond;
            for (const auto& nc : inv.numeric) {
                bool emit = opts_.mode == EncodingMode::Full ||
                            moves_toward_threshold(nc.cmp, context_rate_of(nc, ctx_rates));
                if (emit) maybe_condition_row(nc);
            }
        }

        // Preconditions of the happening's own action.
        for (const auto& nc : snap.pre->numeric) maybe_condition_row(nc);

        // Discrete effects with simultaneous-read semantics.
        const std::vector<Track> snapshot = track_;
        const int owner_start = rec.action.point == SnapAction::Point::End ? rec.start_index : k;

        if (opts_.mode == EncodingMode::Full) {
            ever_dependent_.for_each([&](int f) {
                const NumericEffect* ne = nullptr;
                for (const auto& eff : *snap.eff)
                    if (eff.kind == DiscreteEffect::Kind::Numeric && eff.num.fluent == f)
                        ne = &eff.num;
                int col = new_value_var(f, k, true);
                LinComb post;
                post.add_col(col, 1.0);
                if (!ne) {
                    LinComb row = snapshot[f].value;  // v'_k - v_k = 0
                    row.add(post, -1.0);
                    add_row(std::move(row), RowCmp::Eq, 0.0);
                } else if (ne->is_linear()) {
                    emit_effect_row(*ne, snapshot, k, owner_start, post);
                }
                if (rec.literal_mask.test(f)) {
                    LinComb pin = post;
                    add_row(std::move(pin), RowCmp::Eq, rec.literals[f]);
                }
                track_[f].value = post;
                track_[f].literal = false;
            });
        } else {
            for (const auto& eff : *snap.eff) {
                if (eff.kind != DiscreteEffect::Kind::Numeric) continue;
                int f = eff.num.fluent;
                if (!rec.dependent.test(f)) continue;  // literal result, folded below
                int col = new_value_var(f, k, true);
                LinComb post;
                post.add_col(col, 1.0);
                if (!eff.num.is_linear())
                    throw NonlinearUnderSchedule("nonlinear rvalue needs encoding at happening " +
                                                 std::to_string(k));
                emit_effect_row(eff.num, snapshot, k, owner_start, post);
                track_[f].value = post;
                track_[f].literal = false;
            }
        }

        // Fluents that left the dependent set (assignment or collapsed
        // bounds) continue as constants.
        for (int f = 0; f < p_.fluent_count(); ++f) {
            if (rec.literal_mask.test(f) && !track_[f].literal) {
                track_[f].value = LinComb{};
                track_[f].value.c = rec.literals[f];
                track_[f].literal = true;
            }
        }

        // Invariants checked against the value after this happening:
        // always at the action's own start, otherwise only at potentially
        // constraint-violating changes.
        for (const auto& span : spans_) {
            if (!(span.start <= k && (span.end < 0 || k < span.end))) continue;
            const Condition& inv = p_.duratives[span.durative_id].inv_cond;
            for (const auto& nc : inv.numeric) {
                bool emit = opts_.mode == EncodingMode::Full || k == span.start ||
                            discrete_violates(nc, snap, snapshot, k, owner_start);
                if (emit) maybe_condition_row(nc);
            }
        }
    }

    void emit_effect_row(const NumericEffect& ne, const std::vector<Track>& snapshot, int k,
                         int owner_start, const LinComb& post) {
        LinComb row = post;  // will be brought to "post - expr = 0" form
        switch (ne.op) {
            case AssignOp::Assign: {
                row.add(rvalue_comb(ne, snapshot, k, owner_start), -1.0);
                break;
            }
            case AssignOp::Increase:
            case AssignOp::Decrease: {
                double sign = ne.op == AssignOp::Increase ? 1.0 : -1.0;
                row.add(snapshot[ne.fluent].value, -1.0);
                row.add(rvalue_comb(ne, snapshot, k, owner_start), -sign);
                break;
            }
            case AssignOp::ScaleUp:
            case AssignOp::ScaleDown: {
                LinComb rv = rvalue_comb(ne, snapshot, k, owner_start);
                if (!rv.is_constant())
                    throw NonlinearUnderSchedule("scale rvalue is schedule dependent");
                double c = ne.op == AssignOp::ScaleUp ? rv.c : 1.0 / rv.c;
                row.add(snapshot[ne.fluent].value, -c);
                break;
            }
        }
        add_row(std::move(row), RowCmp::Eq, 0.0);
    }

    const Problem& p_;
    const std::vector<const HappeningRecord*>& recs_;
    EncodeOptions opts_;
    PlanEncoding out_;
    std::vector<Track> track_;
    Bits ever_dependent_;
    std::vector<Span> spans_;
    bool has_numeric_rows_ = false;
};

}  // namespace

PlanEncoding encode_plan(const Problem& p, const std::vector<const HappeningRecord*>& records,
                         const EncodeOptions& opts) {
    return Encoder(p, records, opts).run();
}

ConsistencyResult check_consistency(const PlanEncoding& enc, const LpSolver& solver,
                                    const std::vector<std::pair<int, int>>& tighten_pairs) {
    ConsistencyResult out;
    LpModel model = enc.model;
    model.clear_objective();
    LpSolution s = solver.solve(model);
    ++out.lp_solves;
    if (s.status == LpSolution::Status::NumericalFailure) {
        out.verdict = ConsistencyResult::Verdict::NumericalFailure;
        return out;
    }
    if (s.status == LpSolution::Status::Infeasible) {
        out.verdict = ConsistencyResult::Verdict::Inconsistent;
        return out;
    }
    out.verdict = ConsistencyResult::Verdict::Consistent;

    for (const auto& [i, j] : tighten_pairs) {
        LinComb diff = enc.time_diff(j, i);
        StnRow row;
        row.i = i;
        row.j = j;
        model.set_objective(LpModel::Sense::Minimize, diff.terms);
        LpSolution lo = solver.solve(model);
        ++out.lp_solves;
        model.set_objective(LpModel::Sense::Maximize, diff.terms);
        LpSolution hi = solver.solve(model);
        ++out.lp_solves;
        if (lo.status == LpSolution::Status::NumericalFailure ||
            hi.status == LpSolution::Status::NumericalFailure) {
            out.verdict = ConsistencyResult::Verdict::NumericalFailure;
            return out;
        }
        row.lb = lo.status == LpSolution::Status::Optimal ? lo.objective : -kInf;
        row.ub = hi.status == LpSolution::Status::Optimal ? hi.objective : kInf;
        out.tightenings.push_back(row);
    }
    return out;
}

BoundsResult extract_bounds(const PlanEncoding& enc, const LpSolver& solver,
                            const std::vector<int>& fluents) {
    BoundsResult out;
    LpModel model = enc.model;
    for (int f : fluents) {
        const LinComb& value = enc.finals.at(f);
        if (!enc.dependent_final.test(f)) {
            out.bounds[f] = Interval::point(value.c);
            continue;
        }
        model.set_objective(LpModel::Sense::Minimize, value.terms, value.c);
        LpSolution lo = solver.solve(model);
        ++out.lp_solves;
        model.set_objective(LpModel::Sense::Maximize, value.terms, value.c);
        LpSolution hi = solver.solve(model);
        ++out.lp_solves;
        if (lo.status == LpSolution::Status::NumericalFailure ||
            hi.status == LpSolution::Status::NumericalFailure) {
            out.numerical_failure = true;
            return out;
        }
        Interval b;
        b.lb = lo.status == LpSolution::Status::Optimal ? lo.objective : -kInf;
        b.ub = hi.status == LpSolution::Status::Optimal ? hi.objective : kInf;
        out.bounds[f] = b;
    }
    return out;
}

}  // namespace tplan
