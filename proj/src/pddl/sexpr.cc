#include "sexpr.h"

#include <cctype>

namespace tplan::pddl {

namespace {

class Reader {
public:
    explicit Reader(const std::string& text) : text_(text) {}

    std::vector<Sexpr> read_all() {
        std::vector<Sexpr> out;
        skip_ws();
        while (!eof()) {
            out.push_back(read_form());
            skip_ws();
        }
        return out;
    }

private:
    bool eof() const { return i_ >= text_.size(); }
    char peek() const { return text_[i_]; }

    char advance() {
        char c = text_[i_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    SourcePos pos() const { return {line_, col_}; }

    void skip_ws() {
        while (!eof()) {
            char c = peek();
            if (c == ';') {
                while (!eof() && peek() != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                return;
            }
        }
    }

    Sexpr read_form() {
        skip_ws();
        if (eof()) throw syntax_error(pos(), "unexpected end of input, expected a form");
        SourcePos start = pos();
        char c = peek();
        if (c == '(') {
            advance();
            Sexpr list;
            list.is_list = true;
            list.pos = start;
            skip_ws();
            while (!eof() && peek() != ')') {
                list.items.push_back(read_form());
                skip_ws();
            }
            if (eof()) throw syntax_error(start, "unbalanced '(', expected ')'");
            advance();
            return list;
        }
        if (c == ')') throw syntax_error(start, "unexpected ')'");
        Sexpr atom;
        atom.pos = start;
        while (!eof()) {
            char d = peek();
            if (d == '(' || d == ')' || d == ';' || std::isspace(static_cast<unsigned char>(d)))
                break;
            atom.atom.push_back(
                static_cast<char>(std::tolower(static_cast<unsigned char>(advance()))));
        }
        return atom;
    }

    const std::string& text_;
    std::size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;
};

}  // namespace

std::vector<Sexpr> parse_sexprs(const std::string& text) { return Reader(text).read_all(); }

Sexpr parse_sexpr(const std::string& text) {
    auto forms = parse_sexprs(text);
    if (forms.empty()) throw syntax_error({1, 1}, "empty input, expected a form");
    if (forms.size() > 1)
        throw syntax_error(forms[1].pos, "trailing content after the first form");
    return std::move(forms[0]);
}

}  // namespace tplan::pddl
