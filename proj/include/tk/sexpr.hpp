#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tk/error.hpp"

namespace tk {

// minimal s-expression reader shared by the input language and the tests
struct SExpr {
    enum Kind { List, Symbol, Integer, Rational } kind = List;
    std::vector<SExpr> items;  // List
    std::string sym;           // Symbol
    std::string lit;           // Integer/Rational literal text (e.g. "-3", "3/5")
    int line = 0, col = 0;

    bool is_list() const { return kind == List; }
    bool is_sym(const std::string& s) const { return kind == Symbol && sym == s; }
    const SExpr& at(size_t i) const {
        if (kind != List || i >= items.size()) fail(Err::ArityError, "missing argument");
        return items[i];
    }
    size_t size() const { return items.size(); }
};

std::vector<SExpr> parse_sexprs(const std::string& text);
std::string sexpr_str(const SExpr& e);

}  // namespace tk
