#include "tk/sexpr.hpp"

#include <cctype>

namespace tk {

namespace {

struct Lexer {
    const std::string& s;
    size_t i = 0;
    int line = 1, col = 1;

    void bump(char c) {
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++i;
    }
    void skip_ws() {
        while (i < s.size()) {
            char c = s[i];
            if (c == ';') {  // comment to end of line
                while (i < s.size() && s[i] != '\n') bump(s[i]);
            } else if (std::isspace((unsigned char)c)) {
                bump(c);
            } else {
                break;
            }
        }
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
};

bool atom_char(char c) {
    return !std::isspace((unsigned char)c) && c != '(' && c != ')' && c != ';';
}

bool looks_numeric(const std::string& a, bool* rational) {
    size_t k = 0;
    if (a[k] == '-' || a[k] == '+') ++k;
    if (k >= a.size() || !std::isdigit((unsigned char)a[k])) return false;
    bool slash = false;
    for (; k < a.size(); ++k) {
        if (a[k] == '/' && !slash && k + 1 < a.size()) {
            slash = true;
            continue;
        }
        if (!std::isdigit((unsigned char)a[k])) return false;
    }
    *rational = slash;
    return true;
}

SExpr parse_one(Lexer& lx) {
    lx.skip_ws();
    if (lx.i >= lx.s.size()) fail(Err::SyntaxError, "unexpected end of input");
    SExpr e;
    e.line = lx.line;
    e.col = lx.col;
    char c = lx.s[lx.i];
    if (c == '(') {
        lx.bump(c);
        e.kind = SExpr::List;
        while (true) {
            lx.skip_ws();
            if (lx.i >= lx.s.size())
                fail(Err::SyntaxError, "unclosed '(' at line " + std::to_string(e.line));
            if (lx.s[lx.i] == ')') {
                lx.bump(')');
                break;
            }
            e.items.push_back(parse_one(lx));
        }
        return e;
    }
    if (c == ')')
        fail(Err::SyntaxError, "unmatched ')' at line " + std::to_string(lx.line) + ", col " +
                                   std::to_string(lx.col));
    std::string atom;
    while (lx.i < lx.s.size() && atom_char(lx.s[lx.i])) {
        atom += lx.s[lx.i];
        lx.bump(lx.s[lx.i]);
    }
    bool rational = false;
    if (looks_numeric(atom, &rational)) {
        e.kind = rational ? SExpr::Rational : SExpr::Integer;
        e.lit = atom;
    } else {
        e.kind = SExpr::Symbol;
        e.sym = atom;
    }
    return e;
}

}  // namespace

std::vector<SExpr> parse_sexprs(const std::string& text) {
    Lexer lx{text};
    std::vector<SExpr> out;
    while (!lx.done()) out.push_back(parse_one(lx));
    if (out.empty()) fail(Err::SyntaxError, "empty input");
    return out;
}

std::string sexpr_str(const SExpr& e) {
    switch (e.kind) {
        case SExpr::Symbol: return e.sym;
        case SExpr::Integer:
        case SExpr::Rational: return e.lit;
        case SExpr::List: {
            std::string s = "(";
            for (size_t i = 0; i < e.items.size(); ++i) {
                if (i) s += ' ';
                s += sexpr_str(e.items[i]);
            }
            s += ')';
            return s;
        }
    }
    return "";
}

}  // namespace tk
