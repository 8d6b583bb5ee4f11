#include <array>
#include <random>

#include "doctest.h"
#include "tk/bertini.hpp"
#include "tk/regularity.hpp"

using namespace tk;

namespace {

// oracle: order-2 vanishing at the center of (p, g_1..g_k) by the derivative
// criterion: f(center) has valuation >= 2 and every first partial has
// valuation >= 1, with center_i the root of the linear g_i
bool order2_by_derivatives(const Poly& f, const std::vector<Poly>& params) {
    if (f.is_zero()) return true;
    RingPtr R = f.coeff;
    Int p = num_of(params[0].constant_coeff().q);
    std::map<std::string, Elem> center;
    for (size_t i = 1; i < params.size(); ++i) {
        const Poly& g = params[i];
        Elem c = ring_zero(R), d = ring_zero(R);
        std::string var;
        for (const auto& t : g.t) {
            if (t.m.total() == 0)
                d = t.c;
            else {
                c = t.c;
                for (size_t v = 0; v < t.m.e.size(); ++v)
                    if (t.m.e[v] == 1) var = g.ctx->flat[v];
            }
        }
        center.emplace(var, neg(mul(d, inv(c))));
    }
    auto val_at = [&](const Poly& h) {
        Elem e = substitute_scalars(h, center).constant_coeff();
        return is_zero(e) ? (1 << 30) : valuation(e.q, p);
    };
    if (val_at(f) < 2) return false;
    for (const auto& v : f.ctx->flat)
        if (val_at(partial_derivative(f, v)) < 1) return false;
    return true;
}

// oracle: a product of known linear factors is reduced iff all multiplicities
// are one
Poly with_multiplicities(const CtxPtr& c, const RingPtr& Q, const std::vector<long>& roots,
                         const std::vector<int>& mult) {
    Poly f = poly_const(c, elem_int(Q, 1));
    for (size_t i = 0; i < roots.size(); ++i) {
        Poly lin = sub(poly_var(c, Q, "x"), poly_const(c, elem_int(Q, roots[i])));
        f = mul(f, pow_poly(lin, (unsigned)mult[i]));
    }
    return f;
}

ProjMorphism frobenius_on_P(const RingPtr& k, int n, unsigned p) {
    std::vector<std::string> vars;
    for (int i = 0; i <= n; ++i) vars.push_back("x" + std::to_string(i));
    CtxPtr c = geometric_context(vars);
    std::vector<Poly> forms;
    for (const auto& v : vars) forms.push_back(pow_poly(poly_var(c, k, v), p));
    return make_morphism(k, c, {}, forms);
}

ProjMorphism mixed_family(const Int& p) {
    RingPtr R = ring_Zloc(p);
    CtxPtr c = make_context({VarGroup{"x", Block::Geometric, {"x0", "x1", "x2"}},
                             VarGroup{"y", Block::Geometric, {"y0", "y1", "y2"}}});
    unsigned pe = p.convert_to<unsigned>();
    Poly fam = poly_const(c, elem_int(R, 0));
    std::vector<Poly> forms;
    for (int i = 0; i < 3; ++i) {
        Poly xi = poly_var(c, R, "x" + std::to_string(i));
        fam = add(fam, mul(xi, pow_poly(poly_var(c, R, "y" + std::to_string(i)), pe)));
        forms.push_back(xi);
    }
    return make_morphism(R, c, {fam}, forms, true);
}

}  // namespace

TEST_SUITE("regularity") {

TEST_CASE("order-2 oracle agrees with the substitution check") {
    RingPtr R = ring_Zloc(2);
    CtxPtr c = geometric_context({"x", "y"});
    Poly x = poly_var(c, R, "x"), y = poly_var(c, R, "y");
    Poly two = poly_const(c, elem_int(R, 2));
    std::vector<Poly> m0 = {two, x, y};  // the ideal (2, x, y)
    // hand cases at the origin
    CHECK(local_order2_vanishes(poly_const(c, elem_int(R, 4)), m0));   // 4 = 2^2
    CHECK(local_order2_vanishes(mul(x, y), m0));                       // xy in m^2
    CHECK(local_order2_vanishes(mul_scalar(x, elem_int(R, 2)), m0));   // 2x in m^2
    CHECK(!local_order2_vanishes(x, m0));                              // x has order 1
    CHECK(!local_order2_vanishes(add(mul(x, x), two), m0));            // x^2 + 2: order 1 part 2
    // shifted center (x, y) = (-1, 3) via the ideal (2, x+1, y-3)
    std::vector<Poly> m1 = {two, add(x, poly_const(c, elem_int(R, 1))),
                            sub(y, poly_const(c, elem_int(R, 3)))};
    Poly sq = pow_poly(add(x, poly_const(c, elem_int(R, 1))), 2);
    CHECK(local_order2_vanishes(sq, m1));       // (x+1)^2
    CHECK(!local_order2_vanishes(add(x, poly_const(c, elem_int(R, 1))), m1));
    // random agreement with the derivative oracle
    std::mt19937_64 gen(17);
    std::uniform_int_distribution<long> cd(-6, 6);
    std::uniform_int_distribution<unsigned> ed(0, 2);
    for (int i = 0; i < 250; ++i) {
        Poly f = poly_const(c, elem_int(R, 0));
        for (int t = 0; t < 4; ++t)
            f = add(f, mul_scalar(mul(pow_poly(x, ed(gen)), pow_poly(y, ed(gen))),
                                  elem_int(R, cd(gen))));
        const auto& m = (i % 2 == 0) ? m0 : m1;
        CHECK(local_order2_vanishes(f, m) == order2_by_derivatives(f, m));
    }
}

TEST_CASE("jacobian smoothness on plane curves") {
    RingPtr Q = ring_Q();
    CtxPtr c = geometric_context({"x0", "x1", "x2"});
    Poly x0 = poly_var(c, Q, "x0"), x1 = poly_var(c, Q, "x1"), x2 = poly_var(c, Q, "x2");
    // smooth conic
    Poly conic = add(add(pow_poly(x0, 2), pow_poly(x1, 2)), pow_poly(x2, 2));
    CHECK(jacobian_smooth(Q, c, {conic}));
    // cuspidal cubic x0^2 x2 = x1^3, singular at (0:0:1)
    Poly cusp = sub(mul(pow_poly(x0, 2), x2), pow_poly(x1, 3));
    CHECK(!jacobian_smooth(Q, c, {cusp}));
    // coordinate triangle x0 x1 x2, singular at the three vertices
    CHECK(!jacobian_smooth(Q, c, {mul(mul(x0, x1), x2)}));
    RingPtr F5 = ring_Fp(5);
    Poly conic5 = add(add(pow_poly(poly_var(c, F5, "x0"), 2), pow_poly(poly_var(c, F5, "x1"), 2)),
                      pow_poly(poly_var(c, F5, "x2"), 2));
    CHECK(jacobian_smooth(F5, c, {conic5}));
}

TEST_CASE("rational singular points refute smoothness") {
    // brute force over P^2(F_5): any rational singular point must make the
    // jacobian criterion fail
    std::mt19937_64 gen(23);
    RingPtr F5 = ring_Fp(5);
    CtxPtr c = geometric_context({"x0", "x1", "x2"});
    auto elems = *field_elements(F5, 10);
    std::uniform_int_distribution<long> cd(0, 4);
    std::uniform_int_distribution<unsigned> pick(0, 9);
    std::vector<Poly> monoms;
    for (unsigned a = 0; a <= 3; ++a)
        for (unsigned b = 0; a + b <= 3; ++b)
            monoms.push_back(mul(mul(pow_poly(poly_var(c, F5, "x0"), a),
                                     pow_poly(poly_var(c, F5, "x1"), b)),
                               pow_poly(poly_var(c, F5, "x2"), 3 - a - b)));
    for (int rep = 0; rep < 20; ++rep) {
        Poly f = poly_const(c, elem_int(F5, 0));
        for (int t = 0; t < 4; ++t) f = add(f, mul_scalar(monoms[pick(gen)], elem_int(F5, cd(gen))));
        if (f.is_zero()) continue;
        Poly fx = partial_derivative(f, "x0"), fy = partial_derivative(f, "x1"),
             fz = partial_derivative(f, "x2");
        // all 31 points of P^2(F_5): (1:a:b), (0:1:b), (0:0:1)
        std::vector<std::array<Elem, 3>> points;
        Elem one = elem_int(F5, 1), zero = elem_int(F5, 0);
        for (const auto& a : elems)
            for (const auto& b : elems) points.push_back({one, a, b});
        for (const auto& b : elems) points.push_back({zero, one, b});
        points.push_back({zero, zero, one});
        bool rational_sing = false;
        for (const auto& pt : points) {
            std::map<std::string, Elem> binds{{"x0", pt[0]}, {"x1", pt[1]}, {"x2", pt[2]}};
            auto at = [&](const Poly& g) { return substitute_scalars(g, binds).constant_coeff(); };
            if (is_zero(at(f)) && is_zero(at(fx)) && is_zero(at(fy)) && is_zero(at(fz))) {
                rational_sing = true;
                break;
            }
        }
        if (rational_sing) CHECK(!jacobian_smooth(F5, c, {f}));
    }
}

TEST_CASE("jacobian contract enforcement") {
    RingPtr Q = ring_Q();
    CtxPtr c = geometric_context({"x0", "x1", "x2", "x3"});
    Poly x0 = poly_var(c, Q, "x0"), x1 = poly_var(c, Q, "x1");
    // two independent linear forms cut a smooth line, codimension 2
    CHECK(jacobian_smooth(Q, c, {x0, x1}, 2));
    // declared codimension must match the generator count for r > 1
    CHECK_THROWS_AS((void)jacobian_smooth(Q, c, {x0, x1}, 1), Error);
    // mixed-degree input is rejected
    CtxPtr c2 = make_context({VarGroup{"x", Block::Geometric, {"x0", "x1"}},
                              VarGroup{"y", Block::Geometric, {"y0"}}});
    Poly bad = add(pow_poly(poly_var(c2, Q, "x0"), 2), poly_var(c2, Q, "y0"));
    CHECK_THROWS_AS((void)jacobian_smooth(Q, c2, {bad}), Error);
}

TEST_CASE("reducedness decision tree") {
    RingPtr F2 = ring_Fp(2);
    CtxPtr c = geometric_context({"x0", "x1", "x2"});
    // x0^2 + x1^2 + x2^2 = (x0+x1+x2)^2 over F_2
    Poly sq = add(add(pow_poly(poly_var(c, F2, "x0"), 2), pow_poly(poly_var(c, F2, "x1"), 2)),
                  pow_poly(poly_var(c, F2, "x2"), 2));
    RegularityReport r = reducedness_check(sq);
    CHECK(r.verdict == Verdict::NonReduced);
    REQUIRE(r.witness.size() == 1);
    Poly root = add(add(poly_var(c, F2, "x0"), poly_var(c, F2, "x1")), poly_var(c, F2, "x2"));
    CHECK(poly_eq(r.witness[0], root));
    CHECK(r.verified);

    // (y1^2 + y2)^2 (y1 + 3) over Q
    RingPtr Q = ring_Q();
    CtxPtr cy = geometric_context({"y1", "y2"});
    Poly y1 = poly_var(cy, Q, "y1"), y2 = poly_var(cy, Q, "y2");
    Poly rad = add(pow_poly(y1, 2), y2);
    Poly lin = add(y1, poly_const(cy, elem_int(Q, 3)));
    RegularityReport r2 = reducedness_check(mul(mul(rad, rad), lin));
    CHECK(r2.verdict == Verdict::NonReduced);
    RegularityReport r3 = reducedness_check(mul(rad, lin));
    CHECK(r3.verdict == Verdict::Reduced);

    // x^2 - t over F_2(t): inseparable but irreducible
    RingPtr ext = ring_transc(F2, {"t"});
    CtxPtr cx = geometric_context({"x"});
    CtxPtr tc = ext->payload_ctx;
    Elem t = elem_frac(ext, poly_var(tc, F2, "t"), poly_const(tc, elem_int(F2, 1)));
    Poly insep = add(pow_poly(poly_var(cx, ext, "x"), 2), mul_scalar(poly_const(cx, ring_one(ext)), t));
    RegularityReport r4 = reducedness_check(insep);
    CHECK(r4.verdict == Verdict::Reduced);
    CHECK(r4.verified);

    // t (x + s)^2 over F_2(t, s): all partials vanish but f is not a p-th power
    RingPtr ext2 = ring_transc(F2, {"t", "s"});
    CtxPtr tc2 = ext2->payload_ctx;
    Poly one2 = poly_const(tc2, elem_int(F2, 1));
    Elem te = elem_frac(ext2, poly_var(tc2, F2, "t"), one2);
    Elem se = elem_frac(ext2, poly_var(tc2, F2, "s"), one2);
    Poly xs = add(poly_var(cx, ext2, "x"), mul_scalar(poly_const(cx, ring_one(ext2)), se));
    RegularityReport r5 = reducedness_check(mul_scalar(pow_poly(xs, 2), te));
    CHECK(r5.verdict == Verdict::NonReduced);
    CHECK(poly_eq(r5.witness[0], xs));

    // guards
    CHECK(reducedness_check(poly_const(cy, elem_int(Q, 7))).verdict == Verdict::Reduced);
    CHECK_THROWS_AS((void)reducedness_check(poly_const(cy, elem_int(Q, 0))), Error);
    CtxPtr cz = geometric_context({"x"});
    CHECK_THROWS_AS((void)reducedness_check(poly_var(cz, ring_Z(), "x")), Error);
}

TEST_CASE("reducedness matches constructed multiplicities") {
    std::mt19937_64 gen(29);
    RingPtr Q = ring_Q();
    CtxPtr c = geometric_context({"x"});
    std::uniform_int_distribution<long> rd(-4, 4);
    std::uniform_int_distribution<int> md(1, 3);
    for (int rep = 0; rep < 60; ++rep) {
        // up to three distinct roots with random multiplicities
        std::vector<long> roots;
        std::vector<int> mult;
        int k = 1 + (int)(gen() % 3);
        for (int i = 0; i < k; ++i) {
            long r = rd(gen);
            bool dup = false;
            for (long s : roots) dup = dup || s == r;
            if (dup) continue;
            roots.push_back(r);
            mult.push_back(md(gen));
        }
        Poly f = with_multiplicities(c, Q, roots, mult);
        bool has_double = false;
        for (int m : mult) has_double = has_double || m >= 2;
        RegularityReport r = reducedness_check(f);
        if (has_double) {
            CHECK(r.verdict == Verdict::NonReduced);
            REQUIRE(r.witness.size() == 1);
            // the witness really repeats in f
            auto q1 = divide_exact(f, r.witness[0]);
            REQUIRE(q1.has_value());
            CHECK(divide_exact(*q1, r.witness[0]).has_value());
        } else {
            CHECK(r.verdict == Verdict::Reduced);
        }
    }
}

TEST_CASE("fiberwise smoothness over Z_(p) and Z") {
    ProjMorphism phi = mixed_family(2);
    RegularityReport r = fiberwise_smooth(phi.base, phi.ctx, phi.x_ideal, true);
    CHECK(r.verdict == Verdict::RegularCertified);
    CHECK(r.verified);
    // without the properness assertion the conclusion is withheld
    CHECK_THROWS_AS((void)fiberwise_smooth(phi.base, phi.ctx, phi.x_ideal, false), Error);
    // x0^2 + 4 x1 x2 degenerates to a double line over F_2
    RingPtr R2 = ring_Zloc(2);
    CtxPtr c = geometric_context({"x0", "x1", "x2"});
    Poly f = add(pow_poly(poly_var(c, R2, "x0"), 2),
                 mul_scalar(mul(poly_var(c, R2, "x1"), poly_var(c, R2, "x2")), elem_int(R2, 4)));
    CHECK(fiberwise_smooth(R2, c, {f}, true).verdict == Verdict::Inconclusive);
    // over Z with explicit primes the certificate is partial
    RingPtr Z = ring_Z();
    Poly g = sub(mul(poly_var(c, Z, "x0"), poly_var(c, Z, "x1")),
                 pow_poly(poly_var(c, Z, "x2"), 2));
    RegularityReport rz = fiberwise_smooth(Z, c, {g}, true, {2, 3});
    CHECK(rz.verdict == Verdict::RegularCertified);
    CHECK(!rz.verified);  // finitely many fibers only
}

TEST_CASE("generic member regularity certificates") {
    RingPtr Q = ring_Q();
    CtxPtr c = geometric_context({"x0", "x1", "x2"});
    Poly conic = add(add(pow_poly(poly_var(c, Q, "x0"), 2), pow_poly(poly_var(c, Q, "x1"), 2)),
                     pow_poly(poly_var(c, Q, "x2"), 2));
    ProjMorphism phi = make_morphism(Q, c, {conic},
                                     {poly_var(c, Q, "x0"), poly_var(c, Q, "x1"),
                                      poly_var(c, Q, "x2")});
    CHECK(certify_generic_regular(phi).verdict == Verdict::RegularCertified);
    // an imperfect base field blocks the jacobian route
    RingPtr ext = ring_transc(ring_Fp(2), {"t1"});
    CtxPtr tc = ext->payload_ctx;
    Poly one = poly_const(tc, elem_int(ring_Fp(2), 1));
    Poly conic2 = add(add(pow_poly(poly_var(c, ext, "x0"), 2),
                          pow_poly(poly_var(c, ext, "x1"), 2)),
                      pow_poly(poly_var(c, ext, "x2"), 2));
    ProjMorphism phi2 = make_morphism(ext, c, {conic2},
                                      {poly_var(c, ext, "x0"), poly_var(c, ext, "x1"),
                                       poly_var(c, ext, "x2")});
    CHECK(certify_generic_regular(phi2).verdict == Verdict::Inconclusive);
    // the full ambient space over Z is regular
    RingPtr Z = ring_Z();
    ProjMorphism phi3 = make_morphism(Z, c, {},
                                      {poly_var(c, Z, "x0"), poly_var(c, Z, "x1"),
                                       poly_var(c, Z, "x2")});
    CHECK(certify_generic_regular(phi3).verdict == Verdict::RegularCertified);
}

TEST_CASE("member survey classifies and counts") {
    RingPtr F3 = ring_Fp(3);
    CtxPtr c = geometric_context({"x0", "x1", "x2"});
    Poly x0 = poly_var(c, F3, "x0"), x1 = poly_var(c, F3, "x1"), x2 = poly_var(c, F3, "x2");
    // four forms: members a x0^2 + b x1^2 + c x2^2 + d x0 x1 range over P^3(F_3)
    ProjMorphism phi = make_morphism(F3, c, {},
                                     {pow_poly(x0, 2), pow_poly(x1, 2), pow_poly(x2, 2),
                                      mul(x0, x1)});
    SurveyTable t = member_survey(phi);
    CHECK(t.rows.size() == 40);  // |P^3(F_3)| = 27 + 9 + 3 + 1
    CHECK(t.smooth + t.singular_reduced + t.non_reduced == 40);
    CHECK(t.smooth > 0);
    CHECK(t.singular_reduced > 0);
    CHECK(t.non_reduced > 0);
    auto row_for = [&](long a, long b, long cc, long d) -> const SurveyRow& {
        std::vector<Elem> want = {elem_int(F3, a), elem_int(F3, b), elem_int(F3, cc),
                                  elem_int(F3, d)};
        for (const auto& r : t.rows) {
            bool same = true;
            for (size_t i = 0; i < 4; ++i) same = same && eq(r.coeffs[i], want[i]);
            if (same) return r;
        }
        FAIL("row not found");
        return t.rows[0];
    };
    CHECK(row_for(0, 0, 1, 1).cls == "smooth");            // x2^2 + x0 x1: rank 3
    CHECK(row_for(1, 0, 0, 1).cls == "singular-reduced");  // x0 (x0 + x1)
    CHECK(row_for(1, 1, 0, 1).cls == "non-reduced");       // (x0 - x1)^2 mod 3
    // threaded agrees with serial
    SurveyTable tp = member_survey(phi, true);
    REQUIRE(tp.rows.size() == t.rows.size());
    for (size_t i = 0; i < t.rows.size(); ++i) CHECK(tp.rows[i].cls == t.rows[i].cls);
    // guard trips on large enumerations
    CHECK_THROWS_AS((void)member_survey(phi, false, 10), Error);
    // non-field bases are refused
    CHECK_THROWS_AS((void)member_survey(mixed_family(2)), Error);
}

TEST_CASE("mixed characteristic witness") {
    ProjMorphism phi = mixed_family(2);
    RingPtr R = phi.base;
    // (1, 1, 0): both shifted coefficients vanish exactly, case i
    Hyperplane H1 = make_hyperplane({elem_int(R, 1), elem_int(R, 1), elem_int(R, 0)});
    RegularityReport r1 = mixedchar_witness(phi, H1);
    CHECK(r1.verdict == Verdict::NotRegular);
    CHECK(r1.verified);
    REQUIRE(r1.witness.size() == 4);
    CHECK(poly_str(r1.witness[0]) == "2");
    // a case-ii member: (-1, 1, 0) after scaling gives v(e_1) = 1
    Hyperplane H2 = make_hyperplane({elem_int(R, -1), elem_int(R, 1), elem_int(R, 0)});
    RegularityReport r2 = mixedchar_witness(phi, H2);
    CHECK(r2.verdict == Verdict::NotRegular);
    CHECK(r2.verified);
    // random flat members over both primes always get a verified witness
    std::mt19937_64 gen(37);
    std::uniform_int_distribution<long> d(-3, 3);
    for (Int p : {Int(2), Int(3)}) {
        ProjMorphism fam = mixed_family(p);
        int done = 0;
        while (done < 30) {
            std::vector<Elem> a = {elem_int(fam.base, d(gen)), elem_int(fam.base, d(gen)),
                                   elem_int(fam.base, d(gen))};
            if (!content_is_unit(a)) continue;  // non-flat members are rejected upstream
            RegularityReport r = mixedchar_witness(fam, make_hyperplane(a));
            CHECK(r.verdict == Verdict::NotRegular);
            CHECK(r.verified);
            ++done;
        }
    }
    // a family that is not the recognized shape is refused
    CHECK_THROWS_AS((void)mixedchar_witness(frobenius_on_P(ring_Fp(2), 2, 2), H1), Error);
}

}  // TEST_SUITE
