#ifndef LP_LP_MODEL_H
#define LP_LP_MODEL_H

#include <optional>
#include <string>
#include <vector>

#include "../util/numbers.h"

namespace tplan {

enum class RowCmp { Le, Eq, Ge };

// Abstract linear program: bounded variables, linear rows, optional
// linear objective. Solvers implement LpSolver below so the encoders
// never depend on a concrete implementation.
struct LpModel {
    struct Var {
        std::string name;
        double lb = -kInf;
        double ub = kInf;
    };
    struct Row {
        std::vector<std::pair<int, double>> coeffs;
        RowCmp cmp = RowCmp::Le;
        double rhs = 0.0;
    };
    enum class Sense { Minimize, Maximize };
    struct Objective {
        Sense sense = Sense::Minimize;
        std::vector<std::pair<int, double>> coeffs;
        double constant = 0.0;
    };

    std::vector<Var> vars;
    std::vector<Row> rows;
    std::optional<Objective> objective;

    int add_var(std::string name, double lb = -kInf, double ub = kInf) {
        vars.push_back({std::move(name), lb, ub});
        return static_cast<int>(vars.size()) - 1;
    }
    void add_row(std::vector<std::pair<int, double>> coeffs, RowCmp cmp, double rhs) {
        rows.push_back({std::move(coeffs), cmp, rhs});
    }
    void set_objective(Sense sense, std::vector<std::pair<int, double>> coeffs,
                       double constant = 0.0) {
        objective = Objective{sense, std::move(coeffs), constant};
    }
    void clear_objective() { objective.reset(); }

    // CPLEX-LP text convention, for external cross-checking.
    std::string to_lp_format(const std::string& name = "model") const;
};

struct LpSolution {
    enum class Status { Optimal, Infeasible, Unbounded, NumericalFailure };
    Status status = Status::Infeasible;
    std::vector<double> values;  // per variable, Optimal only
    double objective = 0.0;
};

class LpSolver {
public:
    virtual ~LpSolver() = default;
    virtual LpSolution solve(const LpModel& model) const = 0;
};

}  // namespace tplan

#endif
