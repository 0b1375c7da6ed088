#include "lp_model.h"

#include <cmath>
#include <sstream>

namespace tplan {

namespace {

void write_linear(std::ostringstream& os, const std::vector<std::pair<int, double>>& coeffs,
                  const std::vector<LpModel::Var>& vars) {
    bool first = true;
    for (const auto& [v, c] : coeffs) {
        if (c == 0) continue;
        if (first) {
            if (c < 0) os << "- ";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        double a = std::fabs(c);
        if (a != 1.0) os << a << " ";
        os << vars[v].name;
        first = false;
    }
    if (first) os << "0 " << (vars.empty() ? "x" : vars[0].name);
}

}  // namespace

std::string LpModel::to_lp_format(const std::string& name) const {
    std::ostringstream os;
    os << "\\ " << name << "\n";
    if (objective) {
        os << (objective->sense == Sense::Minimize ? "Minimize" : "Maximize") << "\n obj: ";
        write_linear(os, objective->coeffs, vars);
        os << "\n";
    } else {
        os << "Minimize\n obj: 0 " << (vars.empty() ? "x" : vars[0].name) << "\n";
    }
    os << "Subject To\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        os << " c" << i << ": ";
        write_linear(os, rows[i].coeffs, vars);
        switch (rows[i].cmp) {
            case RowCmp::Le: os << " <= "; break;
            case RowCmp::Eq: os << " = "; break;
            case RowCmp::Ge: os << " >= "; break;
        }
        os << rows[i].rhs << "\n";
    }
    os << "Bounds\n";
    for (const auto& v : vars) {
        if (v.lb == -kInf && v.ub == kInf) {
            os << " " << v.name << " free\n";
        } else if (v.lb == -kInf) {
            os << " -inf <= " << v.name << " <= " << v.ub << "\n";
        } else if (v.ub == kInf) {
            os << " " << v.name << " >= " << v.lb << "\n";
        } else {
            os << " " << v.lb << " <= " << v.name << " <= " << v.ub << "\n";
        }
    }
    os << "End\n";
    return os.str();
}

}  // namespace tplan
