#ifndef PDDL_SEXPR_H
#define PDDL_SEXPR_H

#include <stdexcept>
#include <string>
#include <vector>

namespace tplan::pddl {

struct SourcePos {
    int line = 0;
    int col = 0;
};

struct PddlError : std::runtime_error {
    enum class Kind { Syntax, Unsupported, Semantic };
    Kind kind;
    SourcePos pos;

    PddlError(Kind k, SourcePos p, const std::string& msg)
        : std::runtime_error(msg), kind(k), pos(p) {}
};

inline PddlError syntax_error(SourcePos pos, const std::string& msg) {
    return {PddlError::Kind::Syntax, pos, msg};
}
inline PddlError unsupported(SourcePos pos, const std::string& construct) {
    return {PddlError::Kind::Unsupported, pos, "unsupported construct: " + construct};
}
inline PddlError semantic_error(SourcePos pos, const std::string& msg) {
    return {PddlError::Kind::Semantic, pos, msg};
}

// Identifiers are case-insensitive; atoms are lowercased on read.
struct Sexpr {
    bool is_list = false;
    std::string atom;
    std::vector<Sexpr> items;
    SourcePos pos;

    bool is_atom() const { return !is_list; }
    bool head_is(const std::string& s) const {
        return is_list && !items.empty() && items[0].is_atom() && items[0].atom == s;
    }
    const std::string& head() const { return items[0].atom; }
};

// Reads one complete form; trailing content is a syntax error.
Sexpr parse_sexpr(const std::string& text);

// Reads all top-level forms.
std::vector<Sexpr> parse_sexprs(const std::string& text);

}  // namespace tplan::pddl

#endif
