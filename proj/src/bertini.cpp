#include "tk/bertini.hpp"

#include <algorithm>

namespace tk {

namespace {

Poly lift_to(const Poly& f, const CtxPtr& target) { return substitute(f, {}, target); }

std::string join(const std::vector<std::string>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i];
    }
    return s;
}

}  // namespace

ProjMorphism make_morphism(const RingPtr& base, const CtxPtr& ctx, std::vector<Poly> x_ideal,
                           std::vector<Poly> forms, bool proper) {
    if (!base || !ctx) fail(Err::BadParameters, "morphism needs a base and an ambient");
    for (const auto& g : ctx->groups)
        if (g.block != Block::Geometric)
            fail(Err::ContextMismatch, "morphism ambient must be purely geometric");
    if (forms.empty()) fail(Err::EmptyList, "a morphism needs at least one form");
    auto check = [&](const Poly& f, const char* what) {
        if (!ctx_eq(f.ctx, ctx) || !ring_eq(f.coeff, base))
            fail(Err::ContextMismatch, std::string(what) + " outside the ambient ring");
    };
    for (const auto& f : x_ideal) {
        check(f, "ideal generator");
        for (int g = 0; g < (int)ctx->groups.size(); ++g)
            if (!homogeneous_in_group(f, g))
                fail(Err::NotHomogeneous, "ideal generator not homogeneous");
    }
    std::vector<unsigned> deg(ctx->groups.size(), 0);
    bool seen = false;
    for (const auto& f : forms) {
        check(f, "form");
        if (f.is_zero()) continue;
        std::vector<unsigned> d(ctx->groups.size(), 0);
        for (int g = 0; g < (int)ctx->groups.size(); ++g)
            if (!homogeneous_in_group(f, g, &d[g]))
                fail(Err::InhomogeneousForms, "form not homogeneous");
        if (seen && d != deg) fail(Err::InhomogeneousForms, "forms of unequal degree");
        deg = d;
        seen = true;
    }
    if (!seen) fail(Err::InhomogeneousForms, "all forms vanish");
    ProjMorphism phi;
    phi.base = base;
    phi.ctx = ctx;
    phi.x_ideal = std::move(x_ideal);
    phi.forms = std::move(forms);
    phi.proper_flag = proper;
    return phi;
}

Hyperplane make_hyperplane(std::vector<Elem> coeffs) {
    if (coeffs.empty()) fail(Err::EmptyList, "hyperplane needs coefficients");
    if (!content_is_unit(coeffs))
        fail(Err::NonFlatHyperplane, "coefficient content is not the unit ideal");
    return Hyperplane{std::move(coeffs)};
}

UniversalMember universal_member(const ProjMorphism& phi) {
    int n = (int)phi.forms.size() - 1;
    std::vector<std::string> svars;
    for (int i = 0; i <= n; ++i) svars.push_back("s" + std::to_string(i));
    std::vector<VarGroup> groups = phi.ctx->groups;
    groups.push_back(VarGroup{"s", Block::Geometric, svars});
    CtxPtr pctx = make_context(std::move(groups));
    UniversalMember u;
    u.ctx = pctx;
    u.s_group = (int)phi.ctx->groups.size();
    for (const auto& f : phi.x_ideal) u.ideal.push_back(lift_to(f, pctx));
    Poly gen = poly_zero(pctx, phi.base);
    for (int i = 0; i <= n; ++i)
        gen = add(gen, mul(poly_var(pctx, phi.base, svars[i]), lift_to(phi.forms[i], pctx)));
    u.ideal.push_back(gen);
    return u;
}

GenericMember generic_member(const ProjMorphism& phi, int chart) {
    int n = (int)phi.forms.size() - 1;
    if (chart < 0 || chart > n) fail(Err::BadParameters, "chart index out of range");
    GenericMember g;
    g.phi = phi;
    g.chart = chart;
    if (n == 0) {
        g.extension = phi.base;
        g.ctx = phi.ctx;
        g.equation = phi.forms[0];
        g.ideal_x = phi.x_ideal;
        return g;
    }
    std::vector<std::string> tnames;
    for (int i = 0; i <= n; ++i)
        if (i != chart) tnames.push_back("t" + std::to_string(i));
    std::vector<VarGroup> groups = phi.ctx->groups;
    groups.push_back(VarGroup{"t", Block::Parameter, tnames});
    CtxPtr cctx = make_context(std::move(groups));
    g.extension = ring_transc(phi.base, tnames);
    g.ctx = cctx;
    Poly eq = lift_to(phi.forms[chart], cctx);
    for (int i = 0; i <= n; ++i) {
        if (i == chart) continue;
        Poly ti = poly_var(cctx, phi.base, "t" + std::to_string(i));
        eq = add(eq, mul(ti, lift_to(phi.forms[i], cctx)));
    }
    g.equation = eq;
    for (const auto& f : phi.x_ideal) g.ideal_x.push_back(lift_to(f, cctx));
    return g;
}

std::vector<Poly> member_at(const ProjMorphism& phi, const Hyperplane& H) {
    if (H.a.size() != phi.forms.size())
        fail(Err::BadParameters, "hyperplane arity does not match the target");
    for (const auto& c : H.a)
        if (!ring_eq(c.ring, phi.base))
            fail(Err::ContextMismatch, "hyperplane coefficient outside the base ring");
    if (!content_is_unit(H.a))
        fail(Err::NonFlatHyperplane, "coefficient content is not the unit ideal");
    std::vector<Poly> out = phi.x_ideal;
    Poly gen = poly_zero(phi.ctx, phi.base);
    for (size_t i = 0; i < H.a.size(); ++i) gen = add(gen, mul_scalar(phi.forms[i], H.a[i]));
    out.push_back(gen);
    return out;
}

ChartReport chart_decompose(const ProjMorphism& phi, int i) {
    int n = (int)phi.forms.size() - 1;
    if (n == 0) fail(Err::UnsupportedTarget, "a point target has no chart decomposition");
    if (i < 0 || i > n) fail(Err::BadParameters, "chart index out of range");
    if (phi.ctx->groups.size() != 1)
        fail(Err::UnsupportedTarget, "chart decomposition needs a single projective factor");
    if (phi.forms[i].is_zero()) fail(Err::ChartEmpty, "form vanishes identically");
    if (!phi.x_ideal.empty() && is_field(phi.base)) {
        if (normal_form(phi.forms[i], groebner_basis(phi.x_ideal)).is_zero())
            fail(Err::ChartEmpty, "form vanishes on X");
    }
    int c = (i == 0) ? n : 0;

    ChartReport r;
    r.eliminated_index = i;
    r.normal_index = c;
    r.eliminated_param = "t" + std::to_string(i);
    r.eliminated_dual = "s" + std::to_string(i);

    // universal side: the graph s_i = -(sum_{j != i} s_j phi_j)/phi_i
    UniversalMember u = universal_member(phi);
    r.product_ctx = u.ctx;
    Poly gnum = poly_zero(u.ctx, phi.base);
    for (int j = 0; j <= n; ++j) {
        if (j == i) continue;
        gnum = add(gnum, mul(poly_var(u.ctx, phi.base, "s" + std::to_string(j)),
                             lift_to(phi.forms[j], u.ctx)));
    }
    r.graph_num = neg(gnum);
    r.graph_den = lift_to(phi.forms[i], u.ctx);

    // generic side: free parameters t_j for j outside {c, i}, x_i set to 1
    std::vector<std::string> free;
    for (int j = 0; j <= n; ++j)
        if (j != c && j != i) free.push_back("t" + std::to_string(j));
    r.free_params = free;
    std::vector<VarGroup> groups = phi.ctx->groups;
    if (!free.empty()) groups.push_back(VarGroup{"t", Block::Parameter, free});
    CtxPtr cctx = make_context(std::move(groups));
    r.chart_ctx = cctx;
    // x_i = 1 normalizes the X side whenever i is also an ambient index
    // (phi = id, Frobenius); otherwise the fraction stays homogeneous
    bool dehom = i < phi.ctx->size();
    auto on_chart = [&](const Poly& f) {
        Poly g = lift_to(f, cctx);
        return dehom ? dehomogenize(g, i) : g;
    };
    Poly num = on_chart(phi.forms[c]);
    for (int j = 0; j <= n; ++j) {
        if (j == c || j == i) continue;
        num = add(num, mul(poly_var(cctx, phi.base, "t" + std::to_string(j)),
                           on_chart(phi.forms[j])));
    }
    r.num = neg(num);
    r.den = on_chart(phi.forms[i]);

    std::vector<std::string> coords;
    for (int v = 0; v < (int)phi.ctx->flat.size(); ++v)
        if (!(dehom && v == i)) coords.push_back(phi.ctx->flat[v]);
    coords.insert(coords.end(), free.begin(), free.end());
    r.presentation = "S^{-1}(" + phi.base->name() + "[" + join(coords) + "])";
    return r;
}

bool avoidance_check(const ProjMorphism& phi, const std::vector<Poly>& y_ideal) {
    if (!is_field(phi.base))
        fail(Err::UnsupportedBase, "avoidance check needs a field base; reduce first");
    for (const auto& f : y_ideal)
        if (!ctx_eq(f.ctx, phi.ctx) || !ring_eq(f.coeff, phi.base))
            fail(Err::ContextMismatch, "Y generator outside the ambient ring");
    std::vector<Poly> ygens;
    for (const auto& f : y_ideal)
        if (!f.is_zero()) ygens.push_back(f);
    if (!ygens.empty() && is_unit_ideal(ygens)) return true;  // empty Y, vacuous
    GenericMember g = generic_member(phi, 0);
    std::vector<Poly> basis;
    for (const auto& f : groebner_basis(ygens)) basis.push_back(lift_to(f, g.ctx));
    return !normal_form(g.equation, basis).is_zero();
}

SpecializedMember specialize_lambda(const GenericMember& g, const std::vector<unsigned>& d) {
    if (!is_field(g.phi.base)) fail(Err::NonFieldBase, "specialization needs a field base");
    std::vector<std::string> params;
    if (!g.ctx->groups.empty() && g.ctx->groups.back().block == Block::Parameter)
        params = g.ctx->groups.back().vars;
    if (d.size() != params.size())
        fail(Err::BadParameters, "one exponent per parameter required");
    for (unsigned e : d)
        if (e == 0) fail(Err::BadParameters, "exponents must be positive");

    std::vector<std::string> unames{"u0"};
    for (const auto& t : params) unames.push_back("u" + t.substr(1));
    std::vector<VarGroup> groups = g.phi.ctx->groups;
    groups.push_back(VarGroup{"u", Block::Parameter, unames});
    CtxPtr nctx = make_context(std::move(groups));

    std::map<std::string, Poly> binds;
    Poly u0 = poly_var(nctx, g.phi.base, "u0");
    for (size_t j = 0; j < params.size(); ++j)
        binds[params[j]] =
            add(poly_var(nctx, g.phi.base, unames[j + 1]), pow_poly(u0, d[j]));

    SpecializedMember s;
    s.extension = ring_transc(g.phi.base, unames);
    s.ctx = nctx;
    s.equation = substitute(g.equation, binds, nctx);
    for (const auto& f : g.ideal_x) s.ideal_x.push_back(substitute(f, binds, nctx));
    return s;
}

Poly collapse_equation(const GenericMember& g) {
    if (g.extension->kind != RingKind::TranscExt) return g.equation;
    return collapse_params(g.equation, g.extension);
}

bool base_point_free(const ProjMorphism& phi) {
    if (!is_field(phi.base))
        fail(Err::UnsupportedBase, "base-point check needs a field base");
    std::vector<Poly> gens = phi.x_ideal;
    for (const auto& f : phi.forms)
        if (!f.is_zero()) gens.push_back(f);
    return proj_is_empty(gens);
}

}  // namespace tk
