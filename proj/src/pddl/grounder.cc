#include "grounder.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace tplan::pddl {

namespace {

// Thrown while grounding one binding when a static condition can never
// hold; the binding is skipped.
struct BindingPruned {};

struct GExpr {
    bool linear = true;
    LinearExpr lin;
    ExprNode tree;  // valid when !linear
};

bool tree_uses_duration(const ExprNode& n) {
    if (n.op == ExprNode::Op::Duration) return true;
    for (const auto& k : n.kids)
        if (tree_uses_duration(k)) return true;
    return false;
}

class Grounder {
    struct Decl {
        std::vector<int> param_types;
    };

public:
    Grounder(const DomainAst& dom, const ProblemAst& prob) : dom_(dom), prob_(prob) {}

    Problem run() {
        build_types();
        build_objects();
        build_decls();
        analyze_statics();
        read_init();
        ground_actions();
        finish_init();
        ground_goal();
        ground_metric();
        out_.build_snaps();
        return std::move(out_);
    }

private:
    // ---- symbol tables -------------------------------------------------

    void build_types() {
        type_id_["object"] = 0;
        type_parent_.push_back(-1);
        for (const auto& t : dom_.types) {
            if (!type_id_.count(t.name)) {
                type_id_[t.name] = static_cast<int>(type_parent_.size());
                type_parent_.push_back(-1);
            }
        }
        for (const auto& t : dom_.types) {
            auto it = type_id_.find(t.type);
            if (it == type_id_.end()) {
                type_id_[t.type] = static_cast<int>(type_parent_.size());
                type_parent_.push_back(-1);
            }
            type_parent_[type_id_[t.name]] = type_id_[t.type];
        }
    }

    int type_of_name(const std::string& name, SourcePos pos) const {
        auto it = type_id_.find(name);
        if (it == type_id_.end()) throw semantic_error(pos, "undeclared type '" + name + "'");
        return it->second;
    }

    bool is_subtype(int t, int super) const {
        while (t >= 0) {
            if (t == super) return true;
            t = type_parent_[t];
        }
        return super == 0;
    }

    void build_objects() {
        std::vector<TypedName> all = dom_.constants;
        all.insert(all.end(), prob_.objects.begin(), prob_.objects.end());
        std::sort(all.begin(), all.end(),
                  [](const TypedName& a, const TypedName& b) { return a.name < b.name; });
        for (const auto& o : all) {
            if (object_id_.count(o.name))
                throw semantic_error({0, 0}, "object '" + o.name + "' declared twice");
            int ty = type_of_name(o.type, {0, 0});
            object_id_[o.name] = static_cast<int>(object_names_.size());
            object_names_.push_back(o.name);
            object_type_.push_back(ty);
        }
        objects_of_type_.assign(type_parent_.size(), {});
        for (std::size_t i = 0; i < object_names_.size(); ++i)
            for (std::size_t t = 0; t < type_parent_.size(); ++t)
                if (is_subtype(object_type_[i], static_cast<int>(t)))
                    objects_of_type_[t].push_back(static_cast<int>(i));
    }

    void build_decls() {
        for (const auto& p : dom_.predicates) {
            Decl d;
            for (const auto& param : p.params) d.param_types.push_back(type_of_name(param.type, {0, 0}));
            if (!preds_.emplace(p.name, d).second)
                throw semantic_error({0, 0}, "predicate '" + p.name + "' declared twice");
        }
        for (const auto& f : dom_.functions) {
            Decl d;
            for (const auto& param : f.params) d.param_types.push_back(type_of_name(param.type, {0, 0}));
            if (!funcs_.emplace(f.name, d).second)
                throw semantic_error({0, 0}, "function '" + f.name + "' declared twice");
        }
    }

    void analyze_statics() {
        for (const auto& a : dom_.actions) {
            for (const auto& e : a.effects) {
                switch (e.kind) {
                    case AstEffect::Kind::Add:
                    case AstEffect::Kind::Del:
                        dynamic_preds_.insert(e.atom.head);
                        break;
                    case AstEffect::Kind::Numeric:
                    case AstEffect::Kind::Continuous:
                        dynamic_funcs_.insert(e.atom.head);
                        break;
                }
            }
        }
    }

    void read_init() {
        for (const auto& f : prob_.init_facts) {
            check_ground_atom(f, preds_, "predicate");
            init_fact_keys_.insert(atom_key(f));
        }
        for (const auto& f : prob_.init_fluents) {
            check_ground_atom(f.fluent, funcs_, "function");
            std::string key = atom_key(f.fluent);
            if (init_fluent_values_.count(key))
                throw semantic_error(f.fluent.pos, "fluent " + key + " initialized twice");
            init_fluent_values_[key] = f.value;
        }
    }

    void check_ground_atom(const AstAtom& a, const std::map<std::string, Decl>& table,
                           const char* what) const {
        auto it = table.find(a.head);
        if (it == table.end())
            throw semantic_error(a.pos, std::string("undeclared ") + what + " '" + a.head + "'");
        if (it->second.param_types.size() != a.args.size())
            throw semantic_error(a.pos, "arity mismatch for '" + a.head + "'");
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            auto ob = object_id_.find(a.args[i]);
            if (ob == object_id_.end())
                throw semantic_error(a.pos, "undeclared object '" + a.args[i] + "'");
            if (!is_subtype(object_type_[ob->second], it->second.param_types[i]))
                throw semantic_error(a.pos, "object '" + a.args[i] + "' has the wrong type for '" +
                                                a.head + "'");
        }
    }

    static std::string atom_key(const AstAtom& a) {
        std::string k = "(" + a.head;
        for (const auto& arg : a.args) k += " " + arg;
        return k + ")";
    }

    // ---- binding machinery ---------------------------------------------

    using Env = std::map<std::string, int>;  // ?var -> object id

    std::string resolve_term(const std::string& term, const Env& env, SourcePos pos) const {
        if (!term.empty() && term[0] == '?') {
            auto it = env.find(term);
            if (it == env.end()) throw semantic_error(pos, "unbound variable '" + term + "'");
            return object_names_[it->second];
        }
        if (!object_id_.count(term)) throw semantic_error(pos, "undeclared object '" + term + "'");
        return term;
    }

    AstAtom resolve_atom(const AstAtom& a, const Env& env) const {
        AstAtom out = a;
        for (auto& arg : out.args) arg = resolve_term(arg, env, a.pos);
        return out;
    }

    void check_atom_types(const AstAtom& ground, const std::map<std::string, Decl>& table,
                          const char* what) const {
        check_ground_atom(ground, table, what);
    }

    int fact_id(const AstAtom& ground) {
        std::string key = atom_key(ground);
        auto it = fact_ids_.find(key);
        if (it != fact_ids_.end()) return it->second;
        int id = static_cast<int>(out_.fact_names.size());
        fact_ids_[key] = id;
        out_.fact_names.push_back(key);
        return id;
    }

    int fluent_id(const AstAtom& ground) {
        std::string key = atom_key(ground);
        auto it = fluent_ids_.find(key);
        if (it != fluent_ids_.end()) return it->second;
        int id = static_cast<int>(out_.fluent_names.size());
        fluent_ids_[key] = id;
        out_.fluent_names.push_back(key);
        return id;
    }

    bool pred_is_static(const std::string& name) const { return !dynamic_preds_.count(name); }
    bool func_is_static(const std::string& name) const { return !dynamic_funcs_.count(name); }

    // ---- expressions ----------------------------------------------------

    GExpr ground_expr(const AstExpr& e, const Env& env, bool allow_duration, bool prunable) {
        GExpr g;
        switch (e.kind) {
            case AstExpr::Kind::Number:
                g.lin.constant = e.number;
                return g;
            case AstExpr::Kind::Duration:
                if (!allow_duration)
                    throw unsupported(e.pos, "?duration in this context");
                g.lin.duration_coeff = 1.0;
                return g;
            case AstExpr::Kind::TimeRate:
                throw unsupported(e.pos, "#t outside a continuous effect");
            case AstExpr::Kind::FluentRef: {
                AstAtom ground = resolve_atom(e.fluent, env);
                check_atom_types(ground, funcs_, "function");
                if (func_is_static(e.fluent.head)) {
                    auto it = init_fluent_values_.find(atom_key(ground));
                    if (it == init_fluent_values_.end()) {
                        if (prunable) throw BindingPruned{};
                        throw semantic_error(e.pos, "static fluent " + atom_key(ground) +
                                                        " has no initial value");
                    }
                    g.lin.constant = it->second;
                    return g;
                }
                g.lin.terms.emplace_back(fluent_id(ground), 1.0);
                return g;
            }
            case AstExpr::Kind::Add: {
                std::vector<GExpr> kids = ground_kids(e, env, allow_duration, prunable);
                if (all_linear(kids)) {
                    for (auto& k : kids) g.lin.add(k.lin);
                    return g;
                }
                return make_tree(ExprNode::Op::Add, kids);
            }
            case AstExpr::Kind::Sub: {
                std::vector<GExpr> kids = ground_kids(e, env, allow_duration, prunable);
                if (all_linear(kids)) {
                    g.lin = kids[0].lin;
                    if (kids.size() == 1) {
                        g.lin.scale(-1.0);
                    } else {
                        for (std::size_t i = 1; i < kids.size(); ++i) g.lin.add(kids[i].lin, -1.0);
                    }
                    return g;
                }
                return make_tree(ExprNode::Op::Sub, kids);
            }
            case AstExpr::Kind::Mul: {
                std::vector<GExpr> kids = ground_kids(e, env, allow_duration, prunable);
                if (all_linear(kids)) {
                    int nonconst = -1;
                    double scale = 1.0;
                    bool linear = true;
                    for (std::size_t i = 0; i < kids.size(); ++i) {
                        if (kids[i].lin.is_constant()) {
                            scale *= kids[i].lin.constant;
                        } else if (nonconst < 0) {
                            nonconst = static_cast<int>(i);
                        } else {
                            linear = false;
                        }
                    }
                    if (linear) {
                        if (nonconst < 0) {
                            g.lin.constant = scale;
                        } else {
                            g.lin = kids[nonconst].lin;
                            g.lin.scale(scale);
                        }
                        return g;
                    }
                }
                return make_tree(ExprNode::Op::Mul, kids);
            }
            case AstExpr::Kind::Div: {
                std::vector<GExpr> kids = ground_kids(e, env, allow_duration, prunable);
                if (all_linear(kids) && kids[1].lin.is_constant()) {
                    if (std::fabs(kids[1].lin.constant) < 1e-12)
                        throw semantic_error(e.pos, "division by zero constant");
                    g.lin = kids[0].lin;
                    g.lin.scale(1.0 / kids[1].lin.constant);
                    return g;
                }
                return make_tree(ExprNode::Op::Div, kids);
            }
        }
        return g;
    }

    std::vector<GExpr> ground_kids(const AstExpr& e, const Env& env, bool allow_duration,
                                   bool prunable) {
        std::vector<GExpr> kids;
        kids.reserve(e.kids.size());
        for (const auto& k : e.kids) kids.push_back(ground_expr(k, env, allow_duration, prunable));
        return kids;
    }

    static bool all_linear(const std::vector<GExpr>& kids) {
        return std::all_of(kids.begin(), kids.end(), [](const GExpr& k) { return k.linear; });
    }

    static ExprNode to_tree(const GExpr& g) {
        if (!g.linear) return g.tree;
        // Expand the linear form into a tree node.
        ExprNode n;
        if (g.lin.terms.empty() && g.lin.duration_coeff == 0.0) {
            n.op = ExprNode::Op::Const;
            n.value = g.lin.constant;
            return n;
        }
        n.op = ExprNode::Op::Add;
        for (const auto& [f, c] : g.lin.terms) {
            ExprNode term;
            term.op = ExprNode::Op::Mul;
            ExprNode coeff;
            coeff.op = ExprNode::Op::Const;
            coeff.value = c;
            ExprNode fl;
            fl.op = ExprNode::Op::Fluent;
            fl.fluent = f;
            term.kids = {coeff, fl};
            n.kids.push_back(std::move(term));
        }
        if (g.lin.duration_coeff != 0.0) {
            ExprNode term;
            term.op = ExprNode::Op::Mul;
            ExprNode coeff;
            coeff.op = ExprNode::Op::Const;
            coeff.value = g.lin.duration_coeff;
            ExprNode dur;
            dur.op = ExprNode::Op::Duration;
            term.kids = {coeff, dur};
            n.kids.push_back(std::move(term));
        }
        if (g.lin.constant != 0.0) {
            ExprNode c;
            c.op = ExprNode::Op::Const;
            c.value = g.lin.constant;
            n.kids.push_back(std::move(c));
        }
        if (n.kids.size() == 1) return n.kids[0];
        return n;
    }

    static GExpr make_tree(ExprNode::Op op, const std::vector<GExpr>& kids) {
        GExpr g;
        g.linear = false;
        g.tree.op = op;
        for (const auto& k : kids) g.tree.kids.push_back(to_tree(k));
        return g;
    }

    // ---- conditions and effects ------------------------------------------

    static Cmp to_cmp(AstCmp c) {
        switch (c) {
            case AstCmp::Lt: return Cmp::Lt;
            case AstCmp::Le: return Cmp::Le;
            case AstCmp::Eq: return Cmp::Eq;
            case AstCmp::Ge: return Cmp::Ge;
            case AstCmp::Gt: return Cmp::Gt;
        }
        return Cmp::Eq;
    }

    // Grounds one conjunct into `cond`. Static parts evaluate now: a
    // satisfied conjunct is dropped, an unsatisfiable one prunes the
    // binding (when prunable) or is kept as a constant-false row.
    void ground_conjunct(const AstConjunct& c, const Env& env, Condition& cond, bool prunable,
                         bool fold_statics) {
        if (!c.is_comparison) {
            AstAtom ground = resolve_atom(c.atom, env);
            check_atom_types(ground, preds_, "predicate");
            if (fold_statics && pred_is_static(c.atom.head)) {
                bool holds = init_fact_keys_.count(atom_key(ground)) > 0;
                if (holds == c.positive) return;  // satisfied forever
                if (prunable) throw BindingPruned{};
            }
            cond.literals.push_back({fact_id(ground), c.positive});
            return;
        }
        GExpr lhs = ground_expr(c.lhs, env, false, prunable);
        GExpr rhs = ground_expr(c.rhs, env, false, prunable);
        NumericCondition nc;
        nc.cmp = to_cmp(c.cmp);
        if (lhs.linear && rhs.linear) {
            nc.expr = lhs.lin;
            nc.expr.add(rhs.lin, -1.0);
            nc.rhs = -nc.expr.constant;
            nc.expr.constant = 0.0;
            if (nc.expr.terms.empty()) {
                bool holds = cmp_holds(0.0, nc.cmp, nc.rhs, 0.0);
                if (holds) return;
                if (prunable) throw BindingPruned{};
            }
        } else {
            ExprNode diff;
            diff.op = ExprNode::Op::Sub;
            diff.kids = {to_tree(lhs), to_tree(rhs)};
            nc.rhs = 0.0;
            nc.nonlinear = std::make_shared<ExprNode>(std::move(diff));
        }
        cond.numeric.push_back(std::move(nc));
    }

    Condition ground_condition(const AstCondition& src, AstConjunct::When when, const Env& env,
                               bool prunable) {
        Condition cond;
        for (const auto& c : src)
            if (c.when == when) ground_conjunct(c, env, cond, prunable, true);
        return cond;
    }

    DiscreteEffect ground_discrete(const AstEffect& e, const Env& env, bool duration_fixed,
                                   double fixed_duration) {
        if (e.kind == AstEffect::Kind::Add || e.kind == AstEffect::Kind::Del) {
            AstAtom ground = resolve_atom(e.atom, env);
            check_atom_types(ground, preds_, "predicate");
            if (pred_is_static(e.atom.head))
                throw semantic_error(e.pos, "effect on static predicate '" + e.atom.head + "'");
            int id = fact_id(ground);
            return e.kind == AstEffect::Kind::Add ? DiscreteEffect::add(id)
                                                  : DiscreteEffect::del(id);
        }
        AstAtom lv = resolve_atom(e.atom, env);
        check_atom_types(lv, funcs_, "function");
        NumericEffect ne;
        ne.fluent = fluent_id(lv);
        if (e.num_op == "assign")
            ne.op = AssignOp::Assign;
        else if (e.num_op == "increase")
            ne.op = AssignOp::Increase;
        else if (e.num_op == "decrease")
            ne.op = AssignOp::Decrease;
        else if (e.num_op == "scale-up")
            ne.op = AssignOp::ScaleUp;
        else
            ne.op = AssignOp::ScaleDown;
        GExpr rv = ground_expr(e.value, env, true, true);
        if (rv.linear) {
            ne.rvalue = rv.lin;
            if (ne.rvalue.duration_coeff != 0.0) {
                if (e.when == AstEffect::When::AtStart && !duration_fixed)
                    throw unsupported(e.pos,
                                      "?duration in an at-start effect of a flexible-duration action");
                if (e.when == AstEffect::When::AtStart) {
                    ne.rvalue.constant += ne.rvalue.duration_coeff * fixed_duration;
                    ne.rvalue.duration_coeff = 0.0;
                }
            }
        } else {
            if (tree_uses_duration(rv.tree) && e.when == AstEffect::When::AtStart && !duration_fixed)
                throw unsupported(e.pos,
                                  "?duration in an at-start effect of a flexible-duration action");
            ne.nonlinear = std::make_shared<ExprNode>(std::move(rv.tree));
        }
        return DiscreteEffect::numeric(std::move(ne));
    }

    // ---- actions ----------------------------------------------------------

    void ground_actions() {
        std::vector<const ActionSchema*> schemas;
        for (const auto& a : dom_.actions) schemas.push_back(&a);
        std::sort(schemas.begin(), schemas.end(),
                  [](const ActionSchema* a, const ActionSchema* b) { return a->name < b->name; });
        for (const ActionSchema* schema : schemas) {
            Env env;
            enumerate(*schema, 0, env);
        }
        // Ids were assigned during enumeration in lexicographic order.
    }

    void enumerate(const ActionSchema& schema, std::size_t param, Env& env) {
        if (param == schema.params.size()) {
            try {
                ground_one(schema, env);
            } catch (const BindingPruned&) {
            }
            return;
        }
        const TypedName& p = schema.params[param];
        int ty = type_of_name(p.type, schema.pos);
        for (int obj : objects_of_type_[ty]) {
            env[p.name] = obj;
            enumerate(schema, param + 1, env);
        }
        env.erase(p.name);
    }

    std::string grounded_name(const ActionSchema& schema, const Env& env) const {
        std::string n = "(" + schema.name;
        for (const auto& p : schema.params) n += " " + object_names_[env.at(p.name)];
        return n + ")";
    }

    void ground_one(const ActionSchema& schema, const Env& env) {
        if (!schema.durative) {
            InstantAction a;
            a.name = grounded_name(schema, env);
            a.pre = ground_condition(schema.condition, AstConjunct::When::Always, env, true);
            for (const auto& e : schema.effects)
                a.eff.push_back(ground_discrete(e, env, true, 0.0));
            a.id = static_cast<int>(out_.instants.size());
            out_.instants.push_back(std::move(a));
            return;
        }

        DurativeAction a;
        a.name = grounded_name(schema, env);
        for (const auto& dc : schema.duration) {
            GExpr g = ground_expr(dc.expr, env, false, true);
            DurationConstraint out_dc;
            out_dc.cmp = to_cmp(dc.cmp);
            if (g.linear)
                out_dc.expr = g.lin;
            else
                out_dc.nonlinear = std::make_shared<ExprNode>(std::move(g.tree));
            a.duration.push_back(std::move(out_dc));
        }
        a.start_cond = ground_condition(schema.condition, AstConjunct::When::AtStart, env, true);
        a.end_cond = ground_condition(schema.condition, AstConjunct::When::AtEnd, env, true);
        a.inv_cond = ground_condition(schema.condition, AstConjunct::When::OverAll, env, true);

        bool fixed = false;
        double fixed_value = 0.0;
        {
            DurativeAction probe;
            probe.duration = a.duration;
            if (auto d = probe.constant_duration()) {
                if (d->lb > d->ub + kTolerance) throw BindingPruned{};  // empty duration window
                if (d->is_point(1e-12)) {
                    fixed = true;
                    fixed_value = d->lb;
                }
            }
        }

        for (const auto& e : schema.effects) {
            if (e.kind == AstEffect::Kind::Continuous) {
                AstAtom lv = resolve_atom(e.atom, env);
                check_atom_types(lv, funcs_, "function");
                ContinuousEffect ce;
                ce.fluent = fluent_id(lv);
                GExpr rate = ground_expr(e.value, env, false, true);
                double sign = e.ct_increase ? 1.0 : -1.0;
                if (rate.linear) {
                    ce.rate = rate.lin;
                    ce.rate.scale(sign);
                } else {
                    ExprNode n;
                    if (sign < 0) {
                        n.op = ExprNode::Op::Neg;
                        n.kids = {std::move(rate.tree)};
                    } else {
                        n = std::move(rate.tree);
                    }
                    ce.nonlinear_rate = std::make_shared<ExprNode>(std::move(n));
                }
                a.cont_eff.push_back(std::move(ce));
            } else if (e.when == AstEffect::When::AtEnd) {
                a.end_eff.push_back(ground_discrete(e, env, fixed, fixed_value));
            } else {
                a.start_eff.push_back(ground_discrete(e, env, fixed, fixed_value));
            }
        }
        a.id = static_cast<int>(out_.duratives.size());
        out_.duratives.push_back(std::move(a));
    }

    // ---- init / goal / metric ----------------------------------------

    void finish_init() {
        // Every init fact gets an id even if no action mentions it.
        for (const auto& f : prob_.init_facts) fact_id(resolve_atom(f, {}));
        for (const auto& f : prob_.init_fluents)
            if (!func_is_static(f.fluent.head)) fluent_id(resolve_atom(f.fluent, {}));

        out_.init_facts = Bits(out_.fact_count());
        for (const auto& f : prob_.init_facts) out_.init_facts.set(fact_id(resolve_atom(f, {})));

        out_.init_fluents.assign(out_.fluent_count(), std::nan(""));
        for (const auto& f : prob_.init_fluents) {
            if (func_is_static(f.fluent.head)) continue;
            out_.init_fluents[fluent_id(resolve_atom(f.fluent, {}))] = f.value;
        }
        for (int i = 0; i < out_.fluent_count(); ++i)
            if (std::isnan(out_.init_fluents[i]))
                throw semantic_error({0, 0}, "fluent " + out_.fluent_names[i] +
                                                 " is referenced but has no initial value");
    }

    void ground_goal() {
        Env env;
        for (const auto& c : prob_.goal) ground_conjunct(c, env, out_.goal, false, false);
    }

    void ground_metric() {
        if (!prob_.metric) return;
        Metric m;
        m.minimize = prob_.metric->minimize;
        const AstExpr& e = prob_.metric->expr;
        if (e.kind == AstExpr::Kind::FluentRef && e.fluent.head == "total-time" &&
            e.fluent.args.empty()) {
            m.makespan = true;
        } else {
            GExpr g = ground_expr(e, {}, false, false);
            if (!g.linear) throw unsupported(e.pos, "nonlinear metric expression");
            m.expr = g.lin;
        }
        out_.metric = std::move(m);
    }

    const DomainAst& dom_;
    const ProblemAst& prob_;

    std::map<std::string, int> type_id_;
    std::vector<int> type_parent_;
    std::vector<std::vector<int>> objects_of_type_;
    std::vector<std::string> object_names_;
    std::map<std::string, int> object_id_;
    std::vector<int> object_type_;

    std::map<std::string, Decl> preds_, funcs_;
    std::set<std::string> dynamic_preds_, dynamic_funcs_;

    std::set<std::string> init_fact_keys_;
    std::map<std::string, double> init_fluent_values_;

    std::map<std::string, int> fact_ids_, fluent_ids_;
    Problem out_;
};

}  // namespace

Problem ground(const DomainAst& domain, const ProblemAst& problem) {
    return Grounder(domain, problem).run();
}

}  // namespace tplan::pddl
