#include "tk/ring.hpp"

#include <algorithm>
#include <map>

#include "tk/groebner.hpp"
#include "tk/poly.hpp"

namespace tk {

// ---- integer utilities ----

Int pow_int(const Int& base, unsigned long exp) {
    Int acc = 1, b = base;
    while (exp) {
        if (exp & 1) acc *= b;
        exp >>= 1;
        if (exp) b *= b;
    }
    return acc;
}

std::optional<Int> mod_inverse(const Int& a, const Int& n) {
    Int t0 = 0, t1 = 1, r0 = n, r1 = mod_reduce(a, n);
    while (r1 != 0) {
        Int q = r0 / r1;
        Int t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
        Int r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
    }
    if (r0 != 1) return std::nullopt;
    return mod_reduce(t0, n);
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (int d = 2; d < 100; ++d) {
        if (n == d) return true;
        if (n % d == 0) return false;
    }
    return boost::multiprecision::miller_rabin_test(n, 25);
}

std::vector<std::pair<Int, int>> factorize(const Int& n0) {
    Int n = abs_int(n0);
    if (n < 2) fail(Err::BadParameters, "factorize needs |n| >= 2");
    std::vector<std::pair<Int, int>> out;
    auto strip = [&](const Int& p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.push_back({p, e});
    };
    strip(2);
    for (Int d = 3; d * d <= n && d <= 1000000; d += 2) strip(d);
    if (n > 1) {
        if (!is_prime(n))
            fail(Err::FactorizationFailure, "cofactor " + int_str(n) + " beyond trial bound");
        out.push_back({n, 1});
    }
    return out;
}

int valuation(const Int& a, const Int& p) {
    if (a == 0) fail(Err::BadElement, "valuation of zero");
    Int n = a;
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

int valuation(const Rat& a, const Int& p) {
    if (a == 0) fail(Err::BadElement, "valuation of zero");
    int v = 0;
    if (num_of(a) % p == 0) v = valuation(num_of(a), p);
    if (den_of(a) % p == 0) v = -valuation(den_of(a), p);
    return v;
}

std::string int_str(const Int& a) { return a.str(); }

std::string rat_str(const Rat& q) {
    if (den_of(q) == 1) return num_of(q).str();
    return num_of(q).str() + "/" + den_of(q).str();
}

// ---- error names ----

const char* err_name(Err e) {
    switch (e) {
        case Err::MixedRings: return "MixedRings";
        case Err::DivisionByNonUnit: return "DivisionByNonUnit";
        case Err::EmptyList: return "EmptyList";
        case Err::NotSemiLocal: return "NotSemiLocal";
        case Err::FactorizationFailure: return "FactorizationFailure";
        case Err::UnsupportedResidueField: return "UnsupportedResidueField";
        case Err::BadElement: return "BadElement";
        case Err::ContextMismatch: return "ContextMismatch";
        case Err::UnknownVariable: return "UnknownVariable";
        case Err::DomainIncompatible: return "DomainIncompatible";
        case Err::ZeroPolynomial: return "ZeroPolynomial";
        case Err::WrongCharacteristic: return "WrongCharacteristic";
        case Err::DegreeGuardExceeded: return "DegreeGuardExceeded";
        case Err::NonFieldCoefficients: return "NonFieldCoefficients";
        case Err::NotHomogeneous: return "NotHomogeneous";
        case Err::MixedExtensions: return "MixedExtensions";
        case Err::NonUnitInverse: return "NonUnitInverse";
        case Err::UnsupportedQuotient: return "UnsupportedQuotient";
        case Err::InadmissibleAfterReduction: return "InadmissibleAfterReduction";
        case Err::InadmissibleInput: return "InadmissibleInput";
        case Err::InadmissibleChartFunction: return "InadmissibleChartFunction";
        case Err::UnsupportedTarget: return "UnsupportedTarget";
        case Err::InhomogeneousForms: return "InhomogeneousForms";
        case Err::NonFlatHyperplane: return "NonFlatHyperplane";
        case Err::ChartEmpty: return "ChartEmpty";
        case Err::NonFieldBase: return "NonFieldBase";
        case Err::UnsupportedBase: return "UnsupportedBase";
        case Err::UnsupportedCodimension: return "UnsupportedCodimension";
        case Err::NonProperWithoutFlag: return "NonProperWithoutFlag";
        case Err::BadParameters: return "BadParameters";
        case Err::WrongFamily: return "WrongFamily";
        case Err::EnumerationTooLarge: return "EnumerationTooLarge";
        case Err::SyntaxError: return "SyntaxError";
        case Err::UnknownIdentifier: return "UnknownIdentifier";
        case Err::ArityError: return "ArityError";
        case Err::Unsupported: return "Unsupported";
    }
    return "Error";
}

// ---- ring structure ----

namespace {

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += v[i];
    }
    return s;
}

}  // namespace

std::string Ring::name() const {
    switch (kind) {
        case RingKind::Integers: return "Z";
        case RingKind::Rationals: return "Q";
        case RingKind::PrimeField: return "F" + int_str(n);
        case RingKind::IntegersMod: return "Z/" + int_str(n);
        case RingKind::LocalizedIntegers: return "Z_(" + int_str(n) + ")";
        case RingKind::PolyRing: return base->name() + "[" + join(vars, ",") + "]";
        case RingKind::Quotient:
            return base->name() + "[" + vars[0] + "]/(" + poly_str(*modulus) + ")";
        case RingKind::TranscExt: return base->name() + "(" + join(vars, ",") + ")";
    }
    return "?";
}

RingPtr ring_Z() {
    static RingPtr r = [] {
        auto x = std::make_shared<Ring>();
        x->kind = RingKind::Integers;
        return x;
    }();
    return r;
}

RingPtr ring_Q() {
    static RingPtr r = [] {
        auto x = std::make_shared<Ring>();
        x->kind = RingKind::Rationals;
        return x;
    }();
    return r;
}

RingPtr ring_Fp(const Int& p) {
    if (!is_prime(p)) fail(Err::BadParameters, int_str(p) + " is not prime");
    auto r = std::make_shared<Ring>();
    r->kind = RingKind::PrimeField;
    r->n = p;
    return r;
}

RingPtr ring_Zmod(const Int& n) {
    if (n < 2) fail(Err::BadParameters, "modulus must be at least 2");
    auto r = std::make_shared<Ring>();
    r->kind = RingKind::IntegersMod;
    r->n = n;
    return r;
}

RingPtr ring_Zloc(const Int& p) {
    if (!is_prime(p)) fail(Err::BadParameters, int_str(p) + " is not prime");
    auto r = std::make_shared<Ring>();
    r->kind = RingKind::LocalizedIntegers;
    r->n = p;
    return r;
}

RingPtr ring_poly(const RingPtr& field, std::vector<std::string> vars) {
    if (!is_field(field)) fail(Err::NonFieldCoefficients, "polynomial ring needs a field");
    if (vars.empty()) fail(Err::BadParameters, "polynomial ring needs variables");
    auto r = std::make_shared<Ring>();
    r->kind = RingKind::PolyRing;
    r->base = field;
    r->vars = vars;
    r->payload_ctx = geometric_context(std::move(vars));
    return r;
}

namespace {
std::vector<std::pair<Poly, int>> factor_univ(const Poly& f0);
}

RingPtr ring_quot(const RingPtr& field, const std::string& var, const Poly& modulus) {
    if (!is_field(field)) fail(Err::NonFieldCoefficients, "quotient needs a coefficient field");
    if (!ring_eq(modulus.coeff, field) || modulus.ctx->size() != 1 ||
        modulus.ctx->flat[0] != var)
        fail(Err::UnsupportedQuotient, "modulus must be univariate in " + var);
    if (modulus.is_constant()) fail(Err::UnsupportedQuotient, "modulus must be non-constant");
    if (!eq(modulus.lc(), ring_one(field)))
        fail(Err::UnsupportedQuotient, "modulus must be monic");
    auto r = std::make_shared<Ring>();
    r->kind = RingKind::Quotient;
    r->base = field;
    r->vars = {var};
    r->payload_ctx = modulus.ctx;
    r->modulus = std::make_shared<Poly>(modulus);
    try {
        auto fs = factor_univ(modulus);
        r->modulus_irreducible = fs.size() == 1 && fs[0].second == 1;
    } catch (const Error& e) {
        if (e.code != Err::FactorizationFailure) throw;
        r->modulus_irreducible = false;  // uncertified
    }
    return r;
}

RingPtr ring_transc(const RingPtr& base, std::vector<std::string> params) {
    if (params.empty()) fail(Err::BadParameters, "extension needs parameters");
    auto r = std::make_shared<Ring>();
    r->kind = RingKind::TranscExt;
    r->base = base;
    r->vars = params;
    r->payload_ctx = parameter_context(std::move(params));
    return r;
}

bool ring_eq(const RingPtr& a, const RingPtr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->n != b->n || a->vars != b->vars) return false;
    switch (a->kind) {
        case RingKind::Integers:
        case RingKind::Rationals:
        case RingKind::PrimeField:
        case RingKind::IntegersMod:
        case RingKind::LocalizedIntegers: return true;
        case RingKind::PolyRing:
        case RingKind::TranscExt: return ring_eq(a->base, b->base);
        case RingKind::Quotient:
            return ring_eq(a->base, b->base) && poly_eq(*a->modulus, *b->modulus);
    }
    return false;
}

bool is_field(const RingPtr& r) {
    switch (r->kind) {
        case RingKind::Rationals:
        case RingKind::PrimeField: return true;
        case RingKind::IntegersMod: return is_prime(r->n);
        case RingKind::Quotient: return r->modulus_irreducible;
        case RingKind::TranscExt: return is_field(r->base);
        default: return false;
    }
}

Int characteristic(const RingPtr& r) {
    switch (r->kind) {
        case RingKind::Integers:
        case RingKind::Rationals:
        case RingKind::LocalizedIntegers: return 0;
        case RingKind::PrimeField:
        case RingKind::IntegersMod: return r->n;
        case RingKind::PolyRing:
        case RingKind::Quotient:
        case RingKind::TranscExt: return characteristic(r->base);
    }
    return 0;
}

// ---- univariate helpers (payload polynomials) ----

namespace {

unsigned udeg(const Poly& f) { return f.total_degree(); }

Poly univ_shift(const CtxPtr& ctx, const RingPtr& R, const Elem& c, unsigned k) {
    Monomial m{std::vector<uint32_t>(ctx->size(), 0)};
    m.e[0] = k;
    (void)R;
    return poly_mono(ctx, c, m);
}

// division with remainder, univariate over a field
std::pair<Poly, Poly> univ_divmod(const Poly& f, const Poly& g) {
    if (g.is_zero()) fail(Err::ZeroPolynomial, "division by zero");
    Poly q = poly_zero(f.ctx, f.coeff), r = f;
    Elem gl = inv(g.lc());
    unsigned dg = udeg(g);
    while (!r.is_zero() && udeg(r) >= dg) {
        Elem c = mul(r.lc(), gl);
        Poly piece = univ_shift(f.ctx, f.coeff, c, udeg(r) - dg);
        q = add(q, piece);
        r = sub(r, mul(piece, g));
    }
    return {q, r};
}

Poly univ_rem(const Poly& f, const Poly& g) { return univ_divmod(f, g).second; }

struct Bezout {
    Poly g, u, v;  // u*a + v*b = g
};

Bezout ext_euclid(const Poly& a, const Poly& b) {
    Poly r0 = a, r1 = b;
    Poly u0 = poly_const(a.ctx, ring_one(a.coeff)), u1 = poly_zero(a.ctx, a.coeff);
    Poly v0 = poly_zero(a.ctx, a.coeff), v1 = poly_const(a.ctx, ring_one(a.coeff));
    while (!r1.is_zero()) {
        auto [q, r] = univ_divmod(r0, r1);
        r0 = r1;
        r1 = r;
        Poly u2 = sub(u0, mul(q, u1));
        u0 = u1;
        u1 = u2;
        Poly v2 = sub(v0, mul(q, v1));
        v0 = v1;
        v1 = v2;
    }
    return {r0, u0, v0};
}

constexpr size_t kEnumLimit = 200000;

}  // namespace

std::optional<std::vector<Elem>> field_elements(const RingPtr& k, size_t limit) {
    if (k->kind == RingKind::PrimeField ||
        (k->kind == RingKind::IntegersMod && is_prime(k->n))) {
        if (k->n > (Int)limit) return std::nullopt;
        std::vector<Elem> out;
        for (Int i = 0; i < k->n; ++i) out.push_back(elem_int(k, i));
        return out;
    }
    if (k->kind == RingKind::Quotient && k->modulus_irreducible) {
        auto base = field_elements(k->base, limit);
        if (!base) return std::nullopt;
        unsigned d = udeg(*k->modulus);
        double count = 1;
        for (unsigned i = 0; i < d; ++i) {
            count *= (double)base->size();
            if (count > (double)limit) return std::nullopt;
        }
        std::vector<Elem> out;
        std::vector<size_t> odo(d, 0);
        while (true) {
            std::vector<Term> terms;
            for (unsigned i = 0; i < d; ++i) {
                Monomial m{std::vector<uint32_t>(1, 0)};
                m.e[0] = i;
                terms.push_back({m, (*base)[odo[i]]});
            }
            out.push_back(elem_poly(k, poly_make(k->payload_ctx, k->base, std::move(terms))));
            unsigned i = 0;
            for (; i < d; ++i) {
                if (++odo[i] < base->size()) break;
                odo[i] = 0;
            }
            if (i == d) break;
        }
        return out;
    }
    return std::nullopt;
}

// ---- univariate factorization (complete over finite fields; rational-root
// plus low-degree certification over Q) ----

namespace {

std::vector<Int> divisors_of(const Int& m) {
    std::vector<Int> out{1};
    if (abs_int(m) < 2) return out;
    for (auto& [p, e] : factorize(m)) {
        size_t sz = out.size();
        Int pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t j = 0; j < sz; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<Elem> rational_root(const Poly& h) {
    // h integer-coefficient (as rationals), nonzero constant term
    const RingPtr& Q = h.coeff;
    Int c0 = num_of(h.constant_coeff().q);
    Int L = num_of(h.lc().q);
    for (const Int& p : divisors_of(c0)) {
        for (const Int& q : divisors_of(L)) {
            for (int s = 1; s >= -1; s -= 2) {
                Elem r = elem_rat(Q, Rat(s * p, q));
                Poly val = substitute_scalars(h, {{h.ctx->flat[0], r}});
                if (val.is_zero()) return r;
            }
        }
    }
    return std::nullopt;
}

std::optional<Poly> smallest_divisor_finite(const Poly& h, const std::vector<Elem>& els) {
    unsigned dh = udeg(h);
    double count = 1;
    for (unsigned d = 1; 2 * d <= dh; ++d) {
        count *= (double)els.size();
        if (count > (double)kEnumLimit)
            fail(Err::FactorizationFailure, "divisor search space too large");
        std::vector<size_t> odo(d, 0);
        while (true) {
            std::vector<Term> terms;
            Monomial top{std::vector<uint32_t>(1, 0)};
            top.e[0] = d;
            terms.push_back({top, ring_one(h.coeff)});
            for (unsigned i = 0; i < d; ++i) {
                Monomial m{std::vector<uint32_t>(1, 0)};
                m.e[0] = i;
                terms.push_back({m, els[odo[i]]});
            }
            Poly g = poly_make(h.ctx, h.coeff, std::move(terms));
            if (univ_rem(h, g).is_zero()) return g;
            unsigned i = 0;
            for (; i < d; ++i) {
                if (++odo[i] < els.size()) break;
                odo[i] = 0;
            }
            if (i == d) break;
        }
    }
    return std::nullopt;
}

std::vector<std::pair<Poly, int>> factor_univ(const Poly& f0) {
    if (f0.is_zero() || f0.ctx->size() != 1)
        fail(Err::BadParameters, "factorization needs a nonzero univariate polynomial");
    const RingPtr& k = f0.coeff;
    if (!is_field(k)) fail(Err::NonFieldCoefficients, "factorization needs a field");
    Poly f = mul_scalar(f0, inv(f0.lc()));
    auto finite = field_elements(k, kEnumLimit);
    std::vector<Poly> irr;
    std::vector<Poly> work{f};
    while (!work.empty()) {
        Poly h = work.back();
        work.pop_back();
        unsigned d = udeg(h);
        if (d == 0) continue;
        if (d == 1) {
            irr.push_back(h);
            continue;
        }
        if (finite) {
            if (auto g = smallest_divisor_finite(h, *finite)) {
                irr.push_back(*g);  // a smallest-degree divisor is irreducible
                work.push_back(univ_divmod(h, *g).first);
            } else {
                irr.push_back(h);
            }
            continue;
        }
        if (k->kind == RingKind::Rationals) {
            if (!is_zero(h.constant_coeff())) {
                // clear denominators for the root scan
                Int dl = 1;
                for (const auto& t : h.t) dl = lcm_int(dl, den_of(t.c.q));
                Poly hi = mul_scalar(h, elem_rat(k, Rat(dl)));
                if (auto r = rational_root(hi)) {
                    Poly lin = sub(poly_var(h.ctx, k, h.ctx->flat[0]),
                                   poly_const(h.ctx, *r));
                    irr.push_back(lin);
                    work.push_back(univ_divmod(h, lin).first);
                    continue;
                }
            } else {
                Poly lin = poly_var(h.ctx, k, h.ctx->flat[0]);
                irr.push_back(lin);
                work.push_back(univ_divmod(h, lin).first);
                continue;
            }
            if (d <= 3) {  // no root and degree 2 or 3: irreducible
                irr.push_back(h);
                continue;
            }
            fail(Err::FactorizationFailure,
                 "rootless degree " + std::to_string(d) + " over Q is out of reach");
        }
        fail(Err::FactorizationFailure, "unsupported coefficient field " + k->name());
    }
    std::sort(irr.begin(), irr.end(), [](const Poly& a, const Poly& b) {
        if (udeg(a) != udeg(b)) return udeg(a) < udeg(b);
        return poly_str(a) < poly_str(b);
    });
    std::vector<std::pair<Poly, int>> out;
    for (auto& g : irr) {
        if (!out.empty() && poly_eq(out.back().first, g))
            out.back().second++;
        else
            out.push_back({g, 1});
    }
    return out;
}

}  // namespace

// ---- elements ----

Elem elem_int(const RingPtr& R, const Int& v) {
    Elem e;
    e.ring = R;
    switch (R->kind) {
        case RingKind::Integers: e.z = v; break;
        case RingKind::PrimeField:
        case RingKind::IntegersMod: e.z = mod_reduce(v, R->n); break;
        case RingKind::Rationals:
        case RingKind::LocalizedIntegers: e.q = Rat(v); break;
        case RingKind::PolyRing:
        case RingKind::Quotient:
            return elem_poly(R, poly_const(R->payload_ctx, elem_int(R->base, v)));
        case RingKind::TranscExt: return to_transc(R, elem_int(R->base, v));
    }
    return e;
}

Elem elem_rat(const RingPtr& R, const Rat& v) {
    Elem e;
    e.ring = R;
    switch (R->kind) {
        case RingKind::Rationals: e.q = v; break;
        case RingKind::LocalizedIntegers:
            if (den_of(v) % R->n == 0)
                fail(Err::BadElement, rat_str(v) + " has denominator divisible by " + int_str(R->n));
            e.q = v;
            break;
        case RingKind::Integers:
            if (den_of(v) != 1) fail(Err::BadElement, rat_str(v) + " is not an integer");
            e.z = num_of(v);
            break;
        case RingKind::PrimeField:
        case RingKind::IntegersMod: {
            auto inv = mod_inverse(den_of(v), R->n);
            if (!inv) fail(Err::BadElement, rat_str(v) + " has non-invertible denominator");
            e.z = mod_reduce(num_of(v) * *inv, R->n);
            break;
        }
        case RingKind::PolyRing:
        case RingKind::Quotient:
            return elem_poly(R, poly_const(R->payload_ctx, elem_rat(R->base, v)));
        case RingKind::TranscExt: return to_transc(R, elem_rat(R->base, v));
    }
    return e;
}

Elem elem_poly(const RingPtr& R, const Poly& payload) {
    if (R->kind != RingKind::PolyRing && R->kind != RingKind::Quotient)
        fail(Err::DomainIncompatible, "payload element outside a polynomial-type ring");
    if (!ctx_eq(payload.ctx, R->payload_ctx) || !ring_eq(payload.coeff, R->base))
        fail(Err::ContextMismatch, "payload does not match " + R->name());
    Elem e;
    e.ring = R;
    if (R->kind == RingKind::Quotient)
        e.p = std::make_shared<Poly>(univ_rem(payload, *R->modulus));
    else
        e.p = std::make_shared<Poly>(payload);
    return e;
}

Elem elem_frac(const RingPtr& R, const Poly& num0, const Poly& den0) {
    if (R->kind != RingKind::TranscExt)
        fail(Err::DomainIncompatible, "fraction element outside an extension ring");
    if (!ctx_eq(num0.ctx, R->payload_ctx) || !ctx_eq(den0.ctx, R->payload_ctx) ||
        !ring_eq(num0.coeff, R->base) || !ring_eq(den0.coeff, R->base))
        fail(Err::ContextMismatch, "fraction parts do not match " + R->name());
    if (den0.is_zero()) fail(Err::ZeroPolynomial, "zero denominator");
    if (!content_is_unit(base_coefficients(den0)))
        fail(Err::InadmissibleInput, "denominator content is not the unit ideal");
    Poly num = num0, den = den0;
    if (num.is_zero()) {
        den = poly_const(R->payload_ctx, ring_one(R->base));
    } else if (is_field(R->base)) {
        Poly g = gcd_poly(num, den);
        if (!g.is_constant()) {
            num = *divide_exact(num, g);
            den = *divide_exact(den, g);
        }
        Elem c = inv(den.lc());
        num = mul_scalar(num, c);
        den = mul_scalar(den, c);
    } else if (R->base->kind == RingKind::Integers) {
        // unit content of den forces the combined integer content of (num, den)
        // to 1 already, so only the sign of the denominator needs fixing
        if (den.lc().z < 0) {
            num = neg(num);
            den = neg(den);
        }
    } else if (R->base->kind == RingKind::LocalizedIntegers) {
        Int dl = 1;
        for (const auto& t : num.t) dl = lcm_int(dl, den_of(t.c.q));
        for (const auto& t : den.t) dl = lcm_int(dl, den_of(t.c.q));
        Int g = 0;
        for (const auto& t : num.t) g = gcd_int(g, abs_int(num_of(t.c.q * dl)));
        for (const auto& t : den.t) g = gcd_int(g, abs_int(num_of(t.c.q * dl)));
        Rat s(dl, g);  // p never divides g: den keeps a valuation-zero coefficient
        if (den.lc().q * s < 0) s = -s;
        if (s != 1) {
            Elem scale = elem_rat(R->base, s);
            num = mul_scalar(num, scale);
            den = mul_scalar(den, scale);
        }
    }
    Elem e;
    e.ring = R;
    e.num = std::make_shared<Poly>(std::move(num));
    e.den = std::make_shared<Poly>(std::move(den));
    return e;
}

Elem ring_zero(const RingPtr& R) { return elem_int(R, 0); }
Elem ring_one(const RingPtr& R) { return elem_int(R, 1); }

Elem to_transc(const RingPtr& ext, const Elem& a) {
    if (ring_eq(a.ring, ext)) return a;
    if (ext->kind != RingKind::TranscExt || !ring_eq(a.ring, ext->base))
        fail(Err::MixedRings, "cannot embed " + a.ring->name() + " into " + ext->name());
    return elem_frac(ext, poly_const(ext->payload_ctx, a),
                     poly_const(ext->payload_ctx, ring_one(ext->base)));
}

// ---- element arithmetic ----

namespace {

void same_ring(const Elem& a, const Elem& b) {
    if (!ring_eq(a.ring, b.ring))
        fail(Err::MixedRings, a.ring->name() + " vs " + b.ring->name());
}

}  // namespace

Elem add(const Elem& a, const Elem& b) {
    same_ring(a, b);
    const RingPtr& R = a.ring;
    switch (R->kind) {
        case RingKind::Integers: {
            Elem e;
            e.ring = R;
            e.z = a.z + b.z;
            return e;
        }
        case RingKind::PrimeField:
        case RingKind::IntegersMod: {
            Elem e;
            e.ring = R;
            e.z = mod_reduce(a.z + b.z, R->n);
            return e;
        }
        case RingKind::Rationals:
        case RingKind::LocalizedIntegers: {
            Elem e;
            e.ring = R;
            e.q = a.q + b.q;
            return e;
        }
        case RingKind::PolyRing:
        case RingKind::Quotient: return elem_poly(R, add(*a.p, *b.p));
        case RingKind::TranscExt:
            return elem_frac(R, add(mul(*a.num, *b.den), mul(*b.num, *a.den)),
                             mul(*a.den, *b.den));
    }
    fail(Err::Unsupported, "add");
}

Elem neg(const Elem& a) {
    const RingPtr& R = a.ring;
    switch (R->kind) {
        case RingKind::Integers: {
            Elem e;
            e.ring = R;
            e.z = -a.z;
            return e;
        }
        case RingKind::PrimeField:
        case RingKind::IntegersMod: {
            Elem e;
            e.ring = R;
            e.z = mod_reduce(-a.z, R->n);
            return e;
        }
        case RingKind::Rationals:
        case RingKind::LocalizedIntegers: {
            Elem e;
            e.ring = R;
            e.q = -a.q;
            return e;
        }
        case RingKind::PolyRing:
        case RingKind::Quotient: return elem_poly(R, neg(*a.p));
        case RingKind::TranscExt: return elem_frac(R, neg(*a.num), *a.den);
    }
    fail(Err::Unsupported, "neg");
}

Elem sub(const Elem& a, const Elem& b) { return add(a, neg(b)); }

Elem mul(const Elem& a, const Elem& b) {
    same_ring(a, b);
    const RingPtr& R = a.ring;
    switch (R->kind) {
        case RingKind::Integers: {
            Elem e;
            e.ring = R;
            e.z = a.z * b.z;
            return e;
        }
        case RingKind::PrimeField:
        case RingKind::IntegersMod: {
            Elem e;
            e.ring = R;
            e.z = mod_reduce(a.z * b.z, R->n);
            return e;
        }
        case RingKind::Rationals:
        case RingKind::LocalizedIntegers: {
            Elem e;
            e.ring = R;
            e.q = a.q * b.q;
            return e;
        }
        case RingKind::PolyRing:
        case RingKind::Quotient: return elem_poly(R, mul(*a.p, *b.p));
        case RingKind::TranscExt:
            return elem_frac(R, mul(*a.num, *b.num), mul(*a.den, *b.den));
    }
    fail(Err::Unsupported, "mul");
}

Elem inv(const Elem& a) {
    const RingPtr& R = a.ring;
    switch (R->kind) {
        case RingKind::Integers:
            if (a.z == 1 || a.z == -1) return a;
            fail(Err::NonUnitInverse, int_str(a.z) + " in Z");
        case RingKind::Rationals: {
            if (a.q == 0) fail(Err::NonUnitInverse, "0 in Q");
            Elem e;
            e.ring = R;
            e.q = 1 / a.q;
            return e;
        }
        case RingKind::LocalizedIntegers: {
            if (a.q == 0 || valuation(a.q, R->n) != 0)
                fail(Err::NonUnitInverse, rat_str(a.q) + " in " + R->name());
            Elem e;
            e.ring = R;
            e.q = 1 / a.q;
            return e;
        }
        case RingKind::PrimeField:
        case RingKind::IntegersMod: {
            auto i = mod_inverse(a.z, R->n);
            if (!i) fail(Err::NonUnitInverse, int_str(a.z) + " in " + R->name());
            Elem e;
            e.ring = R;
            e.z = *i;
            return e;
        }
        case RingKind::PolyRing: {
            if (!a.p->is_constant() || a.p->is_zero())
                fail(Err::NonUnitInverse, "non-constant in " + R->name());
            return elem_poly(R, poly_const(R->payload_ctx, inv(a.p->constant_coeff())));
        }
        case RingKind::Quotient: {
            Bezout bz = ext_euclid(*a.p, *R->modulus);
            if (bz.g.is_zero() || !bz.g.is_constant())
                fail(Err::NonUnitInverse, elem_str(a) + " in " + R->name());
            return elem_poly(R, mul_scalar(bz.u, inv(bz.g.constant_coeff())));
        }
        case RingKind::TranscExt: {
            if (!is_unit(a))
                fail(Err::DivisionByNonUnit,
                     "numerator content of " + elem_str(a) + " is not the unit ideal");
            return elem_frac(R, *a.den, *a.num);
        }
    }
    fail(Err::Unsupported, "inv");
}

Elem pow_elem(const Elem& a, unsigned e) {
    Elem acc = ring_one(a.ring), base = a;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        e >>= 1;
        if (e) base = mul(base, base);
    }
    return acc;
}

bool is_zero(const Elem& a) {
    switch (a.ring->kind) {
        case RingKind::Integers:
        case RingKind::PrimeField:
        case RingKind::IntegersMod: return a.z == 0;
        case RingKind::Rationals:
        case RingKind::LocalizedIntegers: return a.q == 0;
        case RingKind::PolyRing:
        case RingKind::Quotient: return a.p->is_zero();
        case RingKind::TranscExt: return a.num->is_zero();
    }
    return false;
}

bool is_unit(const Elem& a) {
    const RingPtr& R = a.ring;
    switch (R->kind) {
        case RingKind::Integers: return a.z == 1 || a.z == -1;
        case RingKind::Rationals: return a.q != 0;
        case RingKind::PrimeField: return a.z != 0;
        case RingKind::IntegersMod: return gcd_int(a.z, R->n) == 1;
        case RingKind::LocalizedIntegers: return a.q != 0 && valuation(a.q, R->n) == 0;
        case RingKind::PolyRing: return a.p->is_constant() && !a.p->is_zero() &&
                                        is_unit(a.p->constant_coeff());
        case RingKind::Quotient: {
            if (a.p->is_zero()) return false;
            Bezout bz = ext_euclid(*a.p, *R->modulus);
            return !bz.g.is_zero() && bz.g.is_constant();
        }
        case RingKind::TranscExt: return !a.num->is_zero() &&
                                         content_is_unit(base_coefficients(*a.num));
    }
    return false;
}

bool eq(const Elem& a, const Elem& b) {
    if (!ring_eq(a.ring, b.ring)) return false;
    switch (a.ring->kind) {
        case RingKind::Integers:
        case RingKind::PrimeField:
        case RingKind::IntegersMod: return a.z == b.z;
        case RingKind::Rationals:
        case RingKind::LocalizedIntegers: return a.q == b.q;
        case RingKind::PolyRing:
        case RingKind::Quotient: return poly_eq(*a.p, *b.p);
        case RingKind::TranscExt:
            if (poly_eq(*a.den, *b.den)) return poly_eq(*a.num, *b.num);
            // denominators are non-zero-divisors, so cross-multiplication is exact
            return poly_eq(mul(*a.num, *b.den), mul(*b.num, *a.den));
    }
    return false;
}

std::string elem_str(const Elem& a) {
    switch (a.ring->kind) {
        case RingKind::Integers:
        case RingKind::PrimeField:
        case RingKind::IntegersMod: return int_str(a.z);
        case RingKind::Rationals:
        case RingKind::LocalizedIntegers: return rat_str(a.q);
        case RingKind::PolyRing:
        case RingKind::Quotient: return poly_str(*a.p);
        case RingKind::TranscExt: {
            bool trivial = a.den->is_constant() &&
                           eq(a.den->constant_coeff(), ring_one(a.ring->base));
            if (trivial) return poly_str(*a.num);
            return "(frac " + poly_str(*a.num) + " " + poly_str(*a.den) + ")";
        }
    }
    return "?";
}

// ---- content ----

bool content_is_unit(const std::vector<Elem>& coeffs) {
    if (coeffs.empty()) fail(Err::EmptyList, "content of an empty list");
    const RingPtr& R = coeffs[0].ring;
    for (const auto& c : coeffs)
        if (!ring_eq(c.ring, R)) fail(Err::MixedRings, "content over mixed rings");
    if (is_field(R)) {
        for (const auto& c : coeffs)
            if (!is_zero(c)) return true;
        return false;
    }
    switch (R->kind) {
        case RingKind::Integers: {
            Int g = 0;
            for (const auto& c : coeffs) g = gcd_int(g, c.z);
            return g == 1;
        }
        case RingKind::IntegersMod: {
            Int g = R->n;
            for (const auto& c : coeffs) g = gcd_int(g, c.z);
            return g == 1;
        }
        case RingKind::LocalizedIntegers: {
            for (const auto& c : coeffs)
                if (c.q != 0 && valuation(c.q, R->n) == 0) return true;
            return false;
        }
        case RingKind::PolyRing: {
            std::vector<Poly> gens;
            for (const auto& c : coeffs)
                if (!c.p->is_zero()) gens.push_back(*c.p);
            if (gens.empty()) return false;
            return is_unit_ideal(gens);
        }
        case RingKind::Quotient: {
            // content unit iff gcd of the lifts together with the modulus is 1
            Poly g = *R->modulus;
            for (const auto& c : coeffs) g = gcd_poly(g, *c.p);
            return g.is_constant() && !g.is_zero();
        }
        case RingKind::TranscExt: {
            // denominators are units, and m R(t) meets R[t] in m R[t]: the
            // content question drops to the combined numerator coefficients
            std::vector<Elem> flat;
            for (const auto& c : coeffs)
                for (const auto& t : c.num->t) flat.push_back(t.c);
            if (flat.empty()) return false;
            return content_is_unit(flat);
        }
        default: fail(Err::UnsupportedBase, R->name());
    }
}

// ---- maximal ideals and residues ----

namespace {

MaximalIdealDesc desc_for_prime(const RingPtr& R, const Int& p) {
    return MaximalIdealDesc{R, elem_int(R, p), ring_Fp(p), "(" + int_str(p) + ")"};
}

}  // namespace

MaximalIdealDesc maximal_ideal(const RingPtr& R, const Elem& gen) {
    if (!ring_eq(R, gen.ring)) fail(Err::MixedRings, "generator from another ring");
    if (is_field(R)) {
        if (!is_zero(gen)) fail(Err::BadParameters, "a field has only the zero ideal");
        return MaximalIdealDesc{R, ring_zero(R), R, "(0)"};
    }
    switch (R->kind) {
        case RingKind::IntegersMod: {
            if (!is_prime(gen.z) || R->n % gen.z != 0)
                fail(Err::BadParameters, int_str(gen.z) + " is not a prime divisor of " +
                                              int_str(R->n));
            return desc_for_prime(R, gen.z);
        }
        case RingKind::LocalizedIntegers: {
            if (gen.q != Rat(R->n))
                fail(Err::BadParameters, "the maximal ideal is generated by " + int_str(R->n));
            Elem g = elem_rat(R, Rat(R->n));
            return MaximalIdealDesc{R, g, ring_Fp(R->n), "(" + int_str(R->n) + ")"};
        }
        case RingKind::Quotient: {
            Poly g = mul_scalar(*gen.p, inv(gen.p->lc()));
            if (!univ_rem(*R->modulus, g).is_zero())
                fail(Err::BadParameters, "generator does not divide the modulus");
            auto fs = factor_univ(g);
            if (fs.size() != 1 || fs[0].second != 1)
                fail(Err::BadParameters, "generator is not irreducible");
            return MaximalIdealDesc{R, elem_poly(R, g), ring_quot(R->base, R->vars[0], g),
                                    "(" + poly_str(g) + ")"};
        }
        case RingKind::TranscExt: {
            if (!gen.den->is_constant() || !gen.num->is_constant())
                fail(Err::BadParameters, "extension ideals come from the base ring");
            Elem base_gen = mul(gen.num->constant_coeff(),
                                inv(gen.den->constant_coeff()));
            MaximalIdealDesc bm = maximal_ideal(R->base, base_gen);
            return MaximalIdealDesc{R, to_transc(R, bm.gen),
                                    ring_transc(bm.residue, R->vars), bm.label};
        }
        default: fail(Err::NotSemiLocal, R->name() + " is not covered here");
    }
}

std::vector<MaximalIdealDesc> enumerate_maximal_ideals(const RingPtr& R) {
    if (is_field(R)) return {MaximalIdealDesc{R, ring_zero(R), R, "(0)"}};
    std::vector<MaximalIdealDesc> out;
    switch (R->kind) {
        case RingKind::IntegersMod:
            for (auto& [p, e] : factorize(R->n)) out.push_back(desc_for_prime(R, p));
            return out;
        case RingKind::LocalizedIntegers:
            return {maximal_ideal(R, elem_rat(R, Rat(R->n)))};
        case RingKind::Quotient: {
            for (auto& [g, e] : factor_univ(*R->modulus))
                out.push_back(MaximalIdealDesc{R, elem_poly(R, g),
                                               ring_quot(R->base, R->vars[0], g),
                                               "(" + poly_str(g) + ")"});
            return out;
        }
        case RingKind::TranscExt: {
            for (auto& bm : enumerate_maximal_ideals(R->base))
                out.push_back(MaximalIdealDesc{R, to_transc(R, bm.gen),
                                               ring_transc(bm.residue, R->vars), bm.label});
            return out;
        }
        default: fail(Err::NotSemiLocal, R->name() + " has no finite ideal enumeration here");
    }
}

Elem residue_map(const Elem& a, const MaximalIdealDesc& m) {
    if (!ring_eq(a.ring, m.ring)) fail(Err::MixedRings, "element outside the ideal's ring");
    const RingPtr& R = m.ring;
    if (is_field(R)) return a;
    switch (R->kind) {
        case RingKind::IntegersMod: return elem_int(m.residue, a.z);
        case RingKind::LocalizedIntegers: {
            Int p = R->n;
            auto vi = mod_inverse(den_of(a.q), p);
            if (!vi) fail(Err::BadElement, "denominator not invertible at " + int_str(p));
            return elem_int(m.residue, num_of(a.q) * *vi);
        }
        case RingKind::Quotient: return elem_poly(m.residue, univ_rem(*a.p, *m.gen.p));
        case RingKind::TranscExt: {
            MaximalIdealDesc bm =
                maximal_ideal(R->base, mul(m.gen.num->constant_coeff(),
                                           inv(m.gen.den->constant_coeff())));
            auto push = [&](const Poly& f) {
                std::vector<Term> terms;
                for (const auto& t : f.t) terms.push_back({t.m, residue_map(t.c, bm)});
                return poly_make(m.residue->payload_ctx, bm.residue, std::move(terms));
            };
            return elem_frac(m.residue, push(*a.num), push(*a.den));
        }
        default: fail(Err::NotSemiLocal, R->name());
    }
}

Elem pth_root_residue(const Elem& a) {
    const RingPtr& R = a.ring;
    if (R->kind == RingKind::PrimeField ||
        (R->kind == RingKind::IntegersMod && is_prime(R->n)))
        return a;  // x -> x^p is the identity on F_p
    if (R->kind == RingKind::Quotient && R->modulus_irreducible &&
        R->base->kind == RingKind::PrimeField) {
        unsigned e = udeg(*R->modulus);
        // Frobenius has order e on F_{p^e}; the inverse is x -> x^{p^{e-1}}
        Elem acc = ring_one(R), base = a;
        Int k = pow_int(characteristic(R), e - 1);
        while (k > 0) {
            if ((k & 1) != 0) acc = mul(acc, base);
            k >>= 1;
            if (k > 0) base = mul(base, base);
        }
        return acc;
    }
    fail(Err::UnsupportedResidueField, R->name() + " is not a supported perfect field");
}

std::optional<Elem> elem_pth_root(const Elem& a) {
    const RingPtr& R = a.ring;
    Int ch = characteristic(R);
    if (ch == 0 || !is_prime(ch)) return std::nullopt;
    unsigned p = (unsigned)ch;
    switch (R->kind) {
        case RingKind::PrimeField:
        case RingKind::IntegersMod: return a;
        case RingKind::Quotient:
            if (R->modulus_irreducible && R->base->kind == RingKind::PrimeField)
                return pth_root_residue(a);
            return std::nullopt;
        case RingKind::PolyRing: {
            auto [ok, r] = is_pth_power(*a.p);
            if (!ok) return std::nullopt;
            return elem_poly(R, r);
        }
        case RingKind::TranscExt: {
            if (!is_field(R->base)) return std::nullopt;
            auto [okn, rn] = is_pth_power(*a.num);
            if (!okn) return std::nullopt;
            auto [okd, rd] = is_pth_power(*a.den);
            if (!okd) return std::nullopt;
            Elem r = elem_frac(R, rn, rd);
            if (!eq(pow_elem(r, p), a)) return std::nullopt;
            return r;
        }
        default: return std::nullopt;
    }
}

Elem lift_elem(const Elem& a, const RingPtr& R) {
    if (ring_eq(a.ring, R)) return a;
    switch (a.ring->kind) {
        case RingKind::PrimeField:
        case RingKind::IntegersMod:
            switch (R->kind) {
                case RingKind::Integers:
                case RingKind::PrimeField:
                case RingKind::IntegersMod: return elem_int(R, a.z);
                case RingKind::Rationals:
                case RingKind::LocalizedIntegers: return elem_rat(R, Rat(a.z));
                default: break;
            }
            break;
        case RingKind::Quotient:
            if (R->kind == RingKind::Quotient && a.ring->vars == R->vars &&
                ring_eq(a.ring->base, R->base))
                return elem_poly(R, *a.p);
            break;
        case RingKind::TranscExt:
            if (R->kind == RingKind::TranscExt && a.ring->vars == R->vars) {
                auto push = [&](const Poly& f) {
                    std::vector<Term> terms;
                    for (const auto& t : f.t) terms.push_back({t.m, lift_elem(t.c, R->base)});
                    return poly_make(R->payload_ctx, R->base, std::move(terms));
                };
                return elem_frac(R, push(*a.num), push(*a.den));
            }
            break;
        default: break;
    }
    fail(Err::BadElement, "no canonical lift from " + a.ring->name() + " to " + R->name());
}

}  // namespace tk
