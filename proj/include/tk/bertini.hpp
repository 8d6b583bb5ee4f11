#pragma once

#include <string>
#include <vector>

#include "tk/groebner.hpp"
#include "tk/poly.hpp"
#include "tk/ring.hpp"
#include "tk/transcend.hpp"

namespace tk {

// phi: X -> P^n_R given by forms of one common (multi)degree on X's ambient
struct ProjMorphism {
    RingPtr base;
    CtxPtr ctx;                 // geometric groups only
    std::vector<Poly> x_ideal;  // homogeneous generators of X
    std::vector<Poly> forms;    // phi_0..phi_n
    bool proper_flag = false;   // asserted properness of X over the base
};

ProjMorphism make_morphism(const RingPtr& base, const CtxPtr& ctx, std::vector<Poly> x_ideal,
                           std::vector<Poly> forms, bool proper = false);

struct Hyperplane {
    std::vector<Elem> a;  // unit-content coefficients a_0..a_n
};

Hyperplane make_hyperplane(std::vector<Elem> coeffs);

struct UniversalMember {
    CtxPtr ctx;               // product ambient: x-groups then the s-group
    int s_group;              // index of the dual group in ctx
    std::vector<Poly> ideal;  // X_ideal + (sum s_i phi_i)
};

struct GenericMember {
    RingPtr extension;        // R(t...) — the base itself when n = 0
    CtxPtr ctx;               // x-groups plus the parameter block
    Poly equation;            // phi_chart + sum_{i != chart} t_i phi_i, flattened
    std::vector<Poly> ideal_x;  // X_ideal lifted to ctx
    int chart = 0;
    ProjMorphism phi;
};

struct ChartReport {
    int eliminated_index;    // i: s_i/t_i solved for, chart X_i = X \ V(phi_i)
    int normal_index;        // c: the slot normalized to 1 on the generic side
    std::string eliminated_param;
    std::string eliminated_dual;
    Poly num, den;           // t_i = num/den after dehomogenizing x_i = 1
    Poly graph_num, graph_den;  // s_i = graph_num/graph_den, homogeneous
    std::vector<std::string> free_params;
    std::string presentation;
    CtxPtr chart_ctx;
    CtxPtr product_ctx;
};

struct SpecializedMember {
    RingPtr extension;  // k(u_0..u_n)
    CtxPtr ctx;
    Poly equation;
    std::vector<Poly> ideal_x;
};

UniversalMember universal_member(const ProjMorphism& phi);
GenericMember generic_member(const ProjMorphism& phi, int chart = 0);
std::vector<Poly> member_at(const ProjMorphism& phi, const Hyperplane& H);
ChartReport chart_decompose(const ProjMorphism& phi, int i);
bool avoidance_check(const ProjMorphism& phi, const std::vector<Poly>& y_ideal);
SpecializedMember specialize_lambda(const GenericMember& g, const std::vector<unsigned>& d);

// the generic equation as a polynomial in the x-variables with extension
// coefficients (collapse of the flattened form)
Poly collapse_equation(const GenericMember& g);

// base-point-freeness of the linear system on X (field bases)
bool base_point_free(const ProjMorphism& phi);

}  // namespace tk
