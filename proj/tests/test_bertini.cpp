#include <random>
#include <set>

#include "doctest.h"
#include "tk/bertini.hpp"

using namespace tk;

namespace {

ProjMorphism identity_on_P(const RingPtr& k, int n) {
    std::vector<std::string> vars;
    for (int i = 0; i <= n; ++i) vars.push_back("x" + std::to_string(i));
    CtxPtr c = geometric_context(vars);
    std::vector<Poly> forms;
    for (const auto& v : vars) forms.push_back(poly_var(c, k, v));
    return make_morphism(k, c, {}, forms);
}

ProjMorphism frobenius_on_P(const RingPtr& k, int n, unsigned p) {
    std::vector<std::string> vars;
    for (int i = 0; i <= n; ++i) vars.push_back("x" + std::to_string(i));
    CtxPtr c = geometric_context(vars);
    std::vector<Poly> forms;
    for (const auto& v : vars) forms.push_back(pow_poly(poly_var(c, k, v), p));
    return make_morphism(k, c, {}, forms);
}

}  // namespace

TEST_SUITE("bertini") {

TEST_CASE("universal member of the identity on P^1") {
    RingPtr Q = ring_Q();
    ProjMorphism phi = identity_on_P(Q, 1);
    UniversalMember u = universal_member(phi);
    CHECK(u.s_group == 1);
    REQUIRE(u.ideal.size() == 1);
    // s0 x0 + s1 x1 in the product context
    Poly want = add(mul(poly_var(u.ctx, Q, "s0"), poly_var(u.ctx, Q, "x0")),
                    mul(poly_var(u.ctx, Q, "s1"), poly_var(u.ctx, Q, "x1")));
    CHECK(poly_eq(u.ideal[0], want));
}

TEST_CASE("generic member of the identity, chart 0") {
    RingPtr Q = ring_Q();
    GenericMember g = generic_member(identity_on_P(Q, 2), 0);
    CHECK(g.extension->name() == "Q(t1,t2)");
    CHECK(poly_str(g.equation) == "(+ x0 (* t1 x1) (* t2 x2))");
    CHECK(g.ideal_x.empty());
}

TEST_CASE("generic member on another chart") {
    RingPtr Q = ring_Q();
    GenericMember g = generic_member(identity_on_P(Q, 2), 1);
    // chart 1: x1 gets coefficient 1, parameters keep their slot names t0, t2
    Poly want = add(add(mul(poly_var(g.equation.ctx, Q, "t0"), poly_var(g.equation.ctx, Q, "x0")),
                        poly_var(g.equation.ctx, Q, "x1")),
                    mul(poly_var(g.equation.ctx, Q, "t2"), poly_var(g.equation.ctx, Q, "x2")));
    CHECK(poly_eq(g.equation, want));
    CHECK(g.extension->name() == "Q(t0,t2)");
}

TEST_CASE("chart coherence: specializing t recovers the member") {
    // with t_i = a_i / a_0 the chart-0 generic equation equals (1/a_0) sum a_i phi_i
    std::mt19937_64 gen(88);
    RingPtr F3 = ring_Fp(3);
    for (const ProjMorphism& phi : {identity_on_P(F3, 2), frobenius_on_P(F3, 2, 3)}) {
        GenericMember g = generic_member(phi, 0);
        std::uniform_int_distribution<long> d(0, 2);
        int done = 0;
        while (done < 25) {
            long v0 = d(gen);
            if (v0 == 0) continue;  // the oracle divides by a0
            Elem a0 = elem_int(F3, v0);
            Elem a1 = elem_int(F3, d(gen)), a2 = elem_int(F3, d(gen));
            Hyperplane H = make_hyperplane({a0, a1, a2});
            std::map<std::string, Elem> binds{{"t1", mul(a1, inv(a0))},
                                              {"t2", mul(a2, inv(a0))}};
            Poly spec = substitute(substitute_scalars(g.equation, binds), {}, phi.ctx);
            Poly member = member_at(phi, H).back();
            CHECK(poly_eq(mul_scalar(spec, a0), member));
            ++done;
        }
    }
}

TEST_CASE("member_at validation") {
    RingPtr Z = ring_Z();
    ProjMorphism phi = identity_on_P(Z, 1);
    // content (2,4) = (2) is not flat
    CHECK_THROWS_AS((void)make_hyperplane({elem_int(Z, 2), elem_int(Z, 4)}), Error);
    // content (2,3) = (1) is fine and the combination is kept verbatim
    Hyperplane H = make_hyperplane({elem_int(Z, 2), elem_int(Z, 3)});
    auto gens = member_at(phi, H);
    REQUIRE(gens.size() == 1);
    Poly want = add(mul_scalar(poly_var(phi.ctx, Z, "x0"), elem_int(Z, 2)),
                    mul_scalar(poly_var(phi.ctx, Z, "x1"), elem_int(Z, 3)));
    CHECK(poly_eq(gens[0], want));
    // arity mismatch
    CHECK_THROWS_AS((void)member_at(phi, make_hyperplane({elem_int(Z, 1)})), Error);
}

TEST_CASE("chart decomposition of the identity on P^2") {
    RingPtr Q = ring_Q();
    ChartReport r = chart_decompose(identity_on_P(Q, 2), 0);
    CHECK(r.eliminated_index == 0);
    CHECK(r.normal_index == 2);
    CHECK(r.free_params == std::vector<std::string>{"t1"});
    // on x0 = 1 with the last coefficient normalized: t0 = -(t1 x1 + x2) / 1
    const CtxPtr& cc = r.num.ctx;
    Poly want = neg(add(mul(poly_var(cc, Q, "t1"), poly_var(cc, Q, "x1")),
                        poly_var(cc, Q, "x2")));
    CHECK(poly_eq(r.num, want));
    CHECK(r.den.is_constant());
    CHECK(r.presentation.find("S^{-1}") != std::string::npos);
}

TEST_CASE("chart decomposition of a veronese map") {
    // phi = (x0^2, x0 x1, x1^2): P^1 -> P^2; chart 2 has a nonconstant denominator
    RingPtr Q = ring_Q();
    CtxPtr c = geometric_context({"x0", "x1"});
    Poly x0 = poly_var(c, Q, "x0"), x1 = poly_var(c, Q, "x1");
    ProjMorphism v = make_morphism(Q, c, {}, {pow_poly(x0, 2), mul(x0, x1), pow_poly(x1, 2)});
    ChartReport r = chart_decompose(v, 2);
    // t2 = -(x0^2 + t1 x0 x1) / x1^2, nothing dehomogenized
    const CtxPtr& cc = r.num.ctx;
    Poly want_num = neg(add(pow_poly(poly_var(cc, Q, "x0"), 2),
                            mul(poly_var(cc, Q, "t1"),
                                mul(poly_var(cc, Q, "x0"), poly_var(cc, Q, "x1")))));
    CHECK(poly_eq(r.num, want_num));
    CHECK(poly_eq(r.den, pow_poly(poly_var(cc, Q, "x1"), 2)));
    CHECK(r.free_params == std::vector<std::string>{"t1"});
}

TEST_CASE("chart decomposition rejects unsupported shapes") {
    RingPtr Q = ring_Q();
    // a point target has no charts
    CtxPtr c1 = geometric_context({"x0"});
    ProjMorphism pt = make_morphism(Q, c1, {}, {poly_var(c1, Q, "x0")});
    CHECK_THROWS_AS((void)chart_decompose(pt, 0), Error);
    // chart index out of range
    CHECK_THROWS_AS((void)chart_decompose(identity_on_P(Q, 1), 5), Error);
}

TEST_CASE("lambda specialization separates distinct weights") {
    RingPtr F2 = ring_Fp(2);
    GenericMember g = generic_member(frobenius_on_P(F2, 2, 2), 0);
    SpecializedMember s = specialize_lambda(g, {1, 2});
    // t1 -> u1 + u0, t2 -> u2 + u0^2 applied to x0^2 + t1 x1^2 + t2 x2^2
    CHECK(poly_str(s.equation) ==
          "(+ (^ x0 2) (* u0 (^ x1 2)) (* u1 (^ x1 2)) (* (^ u0 2) (^ x2 2)) (* u2 (^ x2 2)))");
    CHECK(s.extension->name() == "F2(u0,u1,u2)");
    std::set<std::string> seen;
    for (unsigned d1 = 1; d1 <= 4; ++d1)
        for (unsigned d2 = 1; d2 <= 5; ++d2)
            seen.insert(poly_str(specialize_lambda(g, {d1, d2}).equation));
    CHECK(seen.size() == 20);  // all 4*5 weight vectors give distinct members
}

TEST_CASE("collapsing the parameters into the extension field") {
    RingPtr F2 = ring_Fp(2);
    GenericMember g = generic_member(frobenius_on_P(F2, 2, 2), 0);
    Poly e = collapse_equation(g);
    RingPtr ext = g.extension;
    REQUIRE(ext->kind == RingKind::TranscExt);
    CtxPtr xc = e.ctx;
    CtxPtr tc = ext->payload_ctx;
    Poly one = poly_const(tc, elem_int(F2, 1));
    Elem t1 = elem_frac(ext, poly_var(tc, F2, "t1"), one);
    Elem t2 = elem_frac(ext, poly_var(tc, F2, "t2"), one);
    Poly want = add(add(pow_poly(poly_var(xc, ext, "x0"), 2),
                        mul_scalar(pow_poly(poly_var(xc, ext, "x1"), 2), t1)),
                    mul_scalar(pow_poly(poly_var(xc, ext, "x2"), 2), t2));
    CHECK(poly_eq(e, want));
}

TEST_CASE("base point freeness") {
    RingPtr Q = ring_Q();
    CHECK(base_point_free(identity_on_P(Q, 1)));
    // (x0^2, x0 x1) all vanish along x0 = 0
    CtxPtr c = geometric_context({"x0", "x1"});
    Poly x0 = poly_var(c, Q, "x0"), x1 = poly_var(c, Q, "x1");
    ProjMorphism bad = make_morphism(Q, c, {}, {pow_poly(x0, 2), mul(x0, x1)});
    CHECK(!base_point_free(bad));
}

TEST_CASE("avoidance of a subscheme") {
    RingPtr Q = ring_Q();
    ProjMorphism id1 = identity_on_P(Q, 1);
    CtxPtr c = id1.ctx;
    Poly x0 = poly_var(c, Q, "x0"), x1 = poly_var(c, Q, "x1");
    // x0 + t1 x1 is not a multiple of x0
    CHECK(avoidance_check(id1, {x0}));
    // but x0^2 + t1 x0 x1 is
    ProjMorphism sq = make_morphism(Q, c, {}, {pow_poly(x0, 2), mul(x0, x1)});
    CHECK(!avoidance_check(sq, {x0}));
}

}  // TEST_SUITE
