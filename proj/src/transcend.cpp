#include "tk/transcend.hpp"

#include <algorithm>
#include <map>

namespace tk {

bool is_admissible_denominator(const Poly& f) {
    if (f.is_zero()) return false;  // 0 generates the zero ideal, never the unit ideal
    return content_is_unit(base_coefficients(f));
}

namespace {

void check_ext(const Elem& a, const char* who) {
    if (!a.ring || a.ring->kind != RingKind::TranscExt)
        fail(Err::DomainIncompatible, std::string(who) + " needs an extension element");
}

// rebuild f over a new coefficient ring via a coefficient map; ctx unchanged
Poly map_coeffs(const Poly& f, const CtxPtr& ctx, const RingPtr& S,
                const std::function<Elem(const Elem&)>& h) {
    std::vector<Term> out;
    out.reserve(f.t.size());
    for (const auto& t : f.t) out.push_back(Term{t.m, h(t.c)});
    return poly_make(ctx, S, std::move(out));
}

// quotient ring of R by the ideal generated by gens, with the coefficient
// reduction map; empty ring means the ideal is zero (identity reduction)
struct QuotientPlan {
    RingPtr target;
    std::function<Elem(const Elem&)> red;
};

QuotientPlan plan_quotient(const RingPtr& R, const std::vector<Elem>& gens) {
    for (const auto& g : gens)
        if (!ring_eq(g.ring, R)) fail(Err::ContextMismatch, "ideal generator outside the base ring");
    if (is_field(R)) {
        for (const auto& g : gens)
            if (!is_zero(g)) fail(Err::UnsupportedQuotient, "unit ideal in a field base");
        return {};
    }
    switch (R->kind) {
        case RingKind::Integers: {
            Int d = 0;
            for (const auto& g : gens) d = gcd_int(d, abs_int(g.z));
            if (d == 0) return {};
            if (d == 1) fail(Err::UnsupportedQuotient, "unit ideal");
            RingPtr Q = is_prime(d) ? ring_Fp(d) : ring_Zmod(d);
            return {Q, [Q](const Elem& c) { return elem_int(Q, c.z); }};
        }
        case RingKind::IntegersMod: {
            Int d = R->n;
            for (const auto& g : gens) d = gcd_int(d, abs_int(g.z));
            if (d == R->n) return {};
            if (d == 1) fail(Err::UnsupportedQuotient, "unit ideal");
            RingPtr Q = is_prime(d) ? ring_Fp(d) : ring_Zmod(d);
            return {Q, [Q](const Elem& c) { return elem_int(Q, c.z); }};
        }
        case RingKind::LocalizedIntegers: {
            Int p = R->n;
            int v = -1;  // -1 = zero ideal so far
            for (const auto& g : gens) {
                if (is_zero(g)) continue;
                int w = valuation(g.q, p);
                v = (v < 0) ? w : std::min(v, w);
            }
            if (v < 0) return {};
            if (v == 0) fail(Err::UnsupportedQuotient, "unit ideal");
            Int m = pow_int(p, (unsigned long)v);
            RingPtr Q = (v == 1) ? ring_Fp(p) : ring_Zmod(m);
            return {Q, [Q, m](const Elem& c) {
                        Int b = *mod_inverse(den_of(c.q), m);
                        return elem_int(Q, mod_reduce(num_of(c.q) * b, m));
                    }};
        }
        case RingKind::PolyRing: {
            if (R->payload_ctx->size() != 1)
                fail(Err::UnsupportedQuotient, "non-principal polynomial quotient");
            Poly g = poly_zero(R->payload_ctx, R->base);
            for (const auto& e : gens) {
                if (!e.p || e.p->is_zero()) continue;
                g = g.is_zero() ? *e.p : gcd_poly(g, *e.p);
            }
            if (g.is_zero()) return {};
            if (g.is_constant()) fail(Err::UnsupportedQuotient, "unit ideal");
            g = mul_scalar(g, inv(g.lc()));
            RingPtr Q = ring_quot(R->base, R->payload_ctx->flat[0], g);
            return {Q, [Q](const Elem& c) { return elem_poly(Q, *c.p); }};
        }
        default:
            fail(Err::UnsupportedQuotient, "no supported quotient of " + R->name());
    }
}

// bucket f by powers of its last parameter variable; residual polys live in
// the context of the remaining variables
std::map<unsigned, Poly> split_by_last_var(const Poly& f, const CtxPtr& rest_ctx) {
    int last = f.ctx->size() - 1;
    std::map<unsigned, std::vector<Term>> buckets;
    for (const auto& t : f.t) {
        unsigned e = t.m.e[last];
        Monomial m;
        m.e.assign(t.m.e.begin(), t.m.e.end() - 1);
        buckets[e].push_back(Term{m, t.c});
    }
    std::map<unsigned, Poly> out;
    for (auto& [e, ts] : buckets)
        out.emplace(e, poly_make(rest_ctx, f.coeff, std::move(ts)));
    return out;
}

}  // namespace

ResidueImage reduce_mod_ideal(const Elem& a, const std::vector<Elem>& gens) {
    check_ext(a, "reduce_mod_ideal");
    QuotientPlan plan = plan_quotient(a.ring->base, gens);
    if (!plan.target) return {a.ring, a};
    RingPtr ext2 = ring_transc(plan.target, a.ring->payload_ctx->flat);
    Poly n2 = map_coeffs(*a.num, ext2->payload_ctx, plan.target, plan.red);
    Poly d2 = map_coeffs(*a.den, ext2->payload_ctx, plan.target, plan.red);
    try {
        return {ext2, elem_frac(ext2, n2, d2)};
    } catch (const Error& e) {
        fail(Err::InadmissibleAfterReduction, e.what());
    }
}

Poly lift_from_quotient(const Poly& fbar, const RingPtr& R, const std::vector<Elem>& gens) {
    if (fbar.is_zero() || !content_is_unit(base_coefficients(fbar)))
        fail(Err::InadmissibleInput, "lift input must have unit content");
    for (const auto& g : gens)
        if (!ring_eq(g.ring, R)) fail(Err::ContextMismatch, "ideal generator outside the base ring");
    std::vector<Term> ts;
    ts.reserve(fbar.t.size() + gens.size());
    for (const auto& t : fbar.t) ts.push_back(Term{t.m, lift_elem(t.c, R)});
    unsigned N = fbar.total_degree();
    for (size_t k = 0; k < gens.size(); ++k) {
        Monomial m;
        m.e.assign(fbar.ctx->size(), 0);
        m.e[0] = N + 1 + (unsigned)k;
        ts.push_back(Term{m, gens[k]});
    }
    Poly f = poly_make(fbar.ctx, R, std::move(ts));
    if (!content_is_unit(base_coefficients(f)))
        fail(Err::InadmissibleAfterReduction, "lift lost unit content");
    return f;
}

Elem curry(const Elem& a) {
    check_ext(a, "curry");
    const CtxPtr& ctx = a.ring->payload_ctx;
    int n = ctx->size();
    if (n <= 1) return a;
    std::vector<std::string> inner_vars(ctx->flat.begin(), ctx->flat.end() - 1);
    std::string last = ctx->flat.back();
    RingPtr inner = ring_transc(a.ring->base, inner_vars);
    RingPtr outer = ring_transc(inner, {last});
    Poly one = poly_const(inner->payload_ctx, ring_one(a.ring->base));
    auto rewrap = [&](const Poly& f) {
        std::vector<Term> ts;
        for (auto& [e, part] : split_by_last_var(f, inner->payload_ctx)) {
            Monomial m;
            m.e.assign(1, e);
            ts.push_back(Term{m, elem_frac(inner, part, one)});
        }
        return poly_make(outer->payload_ctx, inner, std::move(ts));
    };
    return elem_frac(outer, rewrap(*a.num), rewrap(*a.den));
}

Elem uncurry(const Elem& b) {
    check_ext(b, "uncurry");
    RingPtr inner = b.ring->base;
    if (inner->kind != RingKind::TranscExt) return b;
    RingPtr R = inner->base;
    std::vector<std::string> vars = inner->payload_ctx->flat;
    vars.insert(vars.end(), b.ring->payload_ctx->flat.begin(), b.ring->payload_ctx->flat.end());
    RingPtr ext = ring_transc(R, vars);
    const CtxPtr& full = ext->payload_ctx;
    int tn = full->size() - 1;

    // clear every inner denominator at once: coefficient j gets multiplied by
    // the product of all the other denominators (no division needed)
    std::vector<Poly> dens;
    for (const Poly* side : {b.num.get(), b.den.get()})
        for (const auto& t : side->t) dens.push_back(*t.c.den);
    size_t m = dens.size();
    Poly one = poly_const(inner->payload_ctx, ring_one(R));
    std::vector<Poly> pre(m + 1, one), suf(m + 1, one);
    for (size_t i = 0; i < m; ++i) pre[i + 1] = mul(pre[i], dens[i]);
    for (size_t i = m; i-- > 0;) suf[i] = mul(suf[i + 1], dens[i]);

    size_t idx = 0;
    auto flatten = [&](const Poly& f) {
        Poly out = poly_zero(full, R);
        for (const auto& t : f.t) {
            Poly scaled = mul(*t.c.num, mul(pre[idx], suf[idx + 1]));
            ++idx;
            Poly lifted = substitute(scaled, {}, full);
            Monomial mo;
            mo.e.assign(full->size(), 0);
            mo.e[tn] = t.m.e[0];
            out = add(out, mul(lifted, poly_mono(full, ring_one(R), mo)));
        }
        return out;
    };
    Poly N = flatten(*b.num);
    Poly D = flatten(*b.den);
    return elem_frac(ext, N, D);
}

std::pair<Elem, Poly> content_peel(const Poly& h) {
    if (h.is_zero()) fail(Err::ZeroPolynomial, "content of the zero polynomial");
    const RingPtr& R = h.coeff;
    switch (R->kind) {
        case RingKind::Integers: {
            Int g = 0;
            for (const auto& t : h.t) g = gcd_int(g, abs_int(t.c.z));
            if (h.lc().z < 0) g = -g;
            std::vector<Term> ts;
            for (const auto& t : h.t) ts.push_back(Term{t.m, elem_int(R, t.c.z / g)});
            return {elem_int(R, g), poly_make(h.ctx, R, std::move(ts))};
        }
        case RingKind::LocalizedIntegers: {
            Int p = R->n;
            int v = valuation(h.t[0].c.q, p);
            for (const auto& t : h.t) v = std::min(v, valuation(t.c.q, p));
            Rat a = (v >= 0) ? Rat(pow_int(p, (unsigned long)v))
                             : Rat(1, pow_int(p, (unsigned long)(-v)));
            if (h.lc().q < 0) a = -a;
            std::vector<Term> ts;
            for (const auto& t : h.t) ts.push_back(Term{t.m, elem_rat(R, t.c.q / a)});
            return {elem_rat(R, a), poly_make(h.ctx, R, std::move(ts))};
        }
        case RingKind::PolyRing: {
            Poly g = *h.t[0].c.p;
            for (const auto& t : h.t) g = gcd_poly(g, *t.c.p);
            std::vector<Term> ts;
            for (const auto& t : h.t)
                ts.push_back(Term{t.m, elem_poly(R, *divide_exact(*t.c.p, g))});
            return {elem_poly(R, g), poly_make(h.ctx, R, std::move(ts))};
        }
        default:
            fail(Err::UnsupportedTarget, "content peel over " + R->name());
    }
}

FiberDescription fiber_description(const RingPtr& ext, const MaximalIdealDesc& m) {
    if (!ext || ext->kind != RingKind::TranscExt)
        fail(Err::DomainIncompatible, "fiber of a non-extension ring");
    if (!ring_eq(m.ring, ext->base))
        fail(Err::ContextMismatch, "maximal ideal lives in a different base");
    MaximalIdealDesc lifted = maximal_ideal(ext, to_transc(ext, m.gen));
    FiberDescription fd;
    fd.fiber = lifted.residue;
    fd.map_elem = [lifted](const Elem& a) { return residue_map(a, lifted); };
    fd.label = "residue at " + m.label;
    return fd;
}

FiberDescription fiber_description_fraction(const RingPtr& ext) {
    if (!ext || ext->kind != RingKind::TranscExt)
        fail(Err::DomainIncompatible, "fiber of a non-extension ring");
    const RingPtr& R = ext->base;
    RingPtr kappa;
    std::function<Elem(const Elem&)> into;
    switch (R->kind) {
        case RingKind::Integers:
            kappa = ring_Q();
            into = [kappa](const Elem& c) { return elem_rat(kappa, Rat(c.z)); };
            break;
        case RingKind::LocalizedIntegers:
            kappa = ring_Q();
            into = [kappa](const Elem& c) { return elem_rat(kappa, c.q); };
            break;
        case RingKind::PolyRing: {
            if (R->payload_ctx->size() != 1)
                fail(Err::UnsupportedTarget, "fraction field of a non-PID base");
            kappa = ring_transc(R->base, R->payload_ctx->flat);
            CtxPtr kctx = kappa->payload_ctx;
            Poly one = poly_const(kctx, ring_one(R->base));
            into = [kappa, kctx, one](const Elem& c) {
                return elem_frac(kappa, substitute(*c.p, {}, kctx), one);
            };
            break;
        }
        default:
            fail(Err::UnsupportedTarget, "fraction field of " + R->name());
    }
    RingPtr fiber = ring_transc(kappa, ext->payload_ctx->flat);
    FiberDescription fd;
    fd.fiber = fiber;
    fd.map_elem = [fiber, kappa, into](const Elem& a) {
        check_ext(a, "fiber map");
        Poly n2 = map_coeffs(*a.num, fiber->payload_ctx, kappa, into);
        Poly d2 = map_coeffs(*a.den, fiber->payload_ctx, kappa, into);
        return elem_frac(fiber, n2, d2);
    };
    fd.label = "fraction field of " + R->name();
    return fd;
}

Elem rebase_chart(const RingPtr& ext, const Poly& num, const Poly& f, unsigned k,
                  const Poly& rest) {
    if (!ext || ext->kind != RingKind::TranscExt)
        fail(Err::DomainIncompatible, "chart rebase outside an extension ring");
    if (f.is_zero() || !content_is_unit(base_coefficients(f)))
        fail(Err::InadmissibleChartFunction, "chart function is not admissible");
    if (rest.is_zero() || !content_is_unit(base_coefficients(rest)))
        fail(Err::InadmissibleChartFunction, "residual denominator is not admissible");
    return elem_frac(ext, num, mul(pow_poly(f, k), rest));
}

}  // namespace tk
