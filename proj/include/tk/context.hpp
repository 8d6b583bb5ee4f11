#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tk/error.hpp"

namespace tk {

enum class Block { Geometric, Parameter };

struct VarGroup {
    std::string label;
    Block block;
    std::vector<std::string> vars;
};

// Ordered variable universe for polynomials. Groups are stored with all
// geometric groups before all parameter groups (stable within each kind),
// which is also the significance order of the monomial order.
struct Context {
    std::vector<VarGroup> groups;
    std::vector<std::string> flat;               // concatenated names
    std::vector<std::pair<int, int>> span;       // [begin, end) per group in flat

    int size() const { return (int)flat.size(); }
    int index_of(const std::string& name) const {
        for (int i = 0; i < (int)flat.size(); ++i)
            if (flat[i] == name) return i;
        return -1;
    }
    int group_of(int var_index) const {
        for (int g = 0; g < (int)span.size(); ++g)
            if (var_index >= span[g].first && var_index < span[g].second) return g;
        return -1;
    }
    Block block_of(int var_index) const { return groups[group_of(var_index)].block; }
};

using CtxPtr = std::shared_ptr<const Context>;

CtxPtr make_context(std::vector<VarGroup> groups);
bool ctx_eq(const CtxPtr& a, const CtxPtr& b);

// convenience: one geometric group
inline CtxPtr geometric_context(std::vector<std::string> vars) {
    return make_context({VarGroup{"x", Block::Geometric, std::move(vars)}});
}
// convenience: one parameter group
inline CtxPtr parameter_context(std::vector<std::string> vars) {
    return make_context({VarGroup{"t", Block::Parameter, std::move(vars)}});
}

}  // namespace tk
