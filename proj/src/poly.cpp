#include "tk/poly.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tk {

// ---- context ----

CtxPtr make_context(std::vector<VarGroup> groups) {
    // geometric groups first; stable so declaration order survives within a kind
    std::stable_partition(groups.begin(), groups.end(),
                          [](const VarGroup& g) { return g.block == Block::Geometric; });
    auto ctx = std::make_shared<Context>();
    ctx->groups = std::move(groups);
    for (const auto& g : ctx->groups) {
        int begin = (int)ctx->flat.size();
        for (const auto& v : g.vars) {
            if (ctx->index_of(v) >= 0) fail(Err::ContextMismatch, "duplicate variable " + v);
            ctx->flat.push_back(v);
        }
        ctx->span.push_back({begin, (int)ctx->flat.size()});
    }
    return ctx;
}

bool ctx_eq(const CtxPtr& a, const CtxPtr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    if (a->flat != b->flat || a->span != b->span) return false;
    for (size_t i = 0; i < a->groups.size(); ++i)
        if (a->groups[i].block != b->groups[i].block) return false;
    return true;
}

// ---- monomial order ----

int mono_cmp(const Context& ctx, const Monomial& a, const Monomial& b) {
    for (const auto& [begin, end] : ctx.span) {
        unsigned da = 0, db = 0;
        for (int i = begin; i < end; ++i) {
            da += a.e[i];
            db += b.e[i];
        }
        if (da != db) return da > db ? 1 : -1;
        for (int i = end - 1; i >= begin; --i) {
            if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
        }
    }
    return 0;
}

namespace {

struct MonoGreater {
    const Context* ctx;
    bool operator()(const Monomial& a, const Monomial& b) const {
        return mono_cmp(*ctx, a, b) > 0;
    }
};

using Acc = std::map<Monomial, Elem, MonoGreater>;

Acc make_acc(const CtxPtr& ctx) { return Acc(MonoGreater{ctx.get()}); }

void acc_add(Acc& acc, const Monomial& m, const Elem& c) {
    auto it = acc.find(m);
    if (it == acc.end()) {
        acc.emplace(m, c);
    } else {
        it->second = add(it->second, c);
        if (is_zero(it->second)) acc.erase(it);
    }
}

Poly from_acc(const CtxPtr& ctx, const RingPtr& R, Acc&& acc) {
    Poly out;
    out.ctx = ctx;
    out.coeff = R;
    out.t.reserve(acc.size());
    for (auto& [m, c] : acc) out.t.push_back({m, c});
    return out;
}

void require_same(const Poly& f, const Poly& g) {
    if (!ctx_eq(f.ctx, g.ctx)) fail(Err::ContextMismatch, "polynomials in different contexts");
    if (!ring_eq(f.coeff, g.coeff))
        fail(Err::ContextMismatch, "polynomials over different coefficient rings");
}

}  // namespace

// ---- constructors ----

Poly poly_zero(const CtxPtr& ctx, const RingPtr& R) {
    Poly p;
    p.ctx = ctx;
    p.coeff = R;
    return p;
}

Poly poly_const(const CtxPtr& ctx, const Elem& c) {
    Poly p = poly_zero(ctx, c.ring);
    if (!is_zero(c)) p.t.push_back({Monomial{std::vector<uint32_t>(ctx->size(), 0)}, c});
    return p;
}

Poly poly_mono(const CtxPtr& ctx, const Elem& c, const Monomial& m) {
    Poly p = poly_zero(ctx, c.ring);
    if ((int)m.e.size() != ctx->size()) fail(Err::ContextMismatch, "monomial size mismatch");
    if (!is_zero(c)) p.t.push_back({m, c});
    return p;
}

Poly poly_var(const CtxPtr& ctx, const RingPtr& R, const std::string& name) {
    int i = ctx->index_of(name);
    if (i < 0) fail(Err::UnknownVariable, name);
    Monomial m{std::vector<uint32_t>(ctx->size(), 0)};
    m.e[i] = 1;
    return poly_mono(ctx, ring_one(R), m);
}

Poly poly_make(const CtxPtr& ctx, const RingPtr& R, std::vector<Term> terms) {
    auto acc = make_acc(ctx);
    for (auto& t : terms) {
        if ((int)t.m.e.size() != ctx->size()) fail(Err::ContextMismatch, "monomial size mismatch");
        if (!is_zero(t.c)) acc_add(acc, t.m, t.c);
    }
    return from_acc(ctx, R, std::move(acc));
}

Elem Poly::constant_coeff() const {
    if (t.empty()) return ring_zero(coeff);
    const Term& last = t.back();
    if (last.m.total() == 0) return last.c;
    return ring_zero(coeff);
}

unsigned Poly::total_degree() const {
    unsigned d = 0;
    for (const auto& tm : t) d = std::max(d, tm.m.total());
    return d;
}

// ---- arithmetic ----

Poly add(const Poly& f, const Poly& g) {
    require_same(f, g);
    Poly out = poly_zero(f.ctx, f.coeff);
    size_t i = 0, j = 0;
    while (i < f.t.size() || j < g.t.size()) {
        if (i == f.t.size()) {
            out.t.push_back(g.t[j++]);
            continue;
        }
        if (j == g.t.size()) {
            out.t.push_back(f.t[i++]);
            continue;
        }
        int c = mono_cmp(*f.ctx, f.t[i].m, g.t[j].m);
        if (c > 0) {
            out.t.push_back(f.t[i++]);
        } else if (c < 0) {
            out.t.push_back(g.t[j++]);
        } else {
            Elem s = tk::add(f.t[i].c, g.t[j].c);
            if (!is_zero(s)) out.t.push_back({f.t[i].m, s});
            ++i;
            ++j;
        }
    }
    return out;
}

Poly neg(const Poly& f) {
    Poly out = f;
    for (auto& t : out.t) t.c = tk::neg(t.c);
    return out;
}

Poly sub(const Poly& f, const Poly& g) { return add(f, neg(g)); }

Poly mul(const Poly& f, const Poly& g) {
    require_same(f, g);
    if (f.is_zero() || g.is_zero()) return poly_zero(f.ctx, f.coeff);
    guard::check_degree(f.total_degree() + g.total_degree());
    auto acc = make_acc(f.ctx);
    for (const auto& a : f.t) {
        for (const auto& b : g.t) {
            Monomial m = a.m;
            for (size_t k = 0; k < m.e.size(); ++k) m.e[k] += b.m.e[k];
            Elem c = tk::mul(a.c, b.c);
            if (!is_zero(c)) acc_add(acc, m, c);
        }
    }
    return from_acc(f.ctx, f.coeff, std::move(acc));
}

Poly mul_scalar(const Poly& f, const Elem& c) {
    if (!ring_eq(f.coeff, c.ring)) fail(Err::ContextMismatch, "scalar from a different ring");
    if (is_zero(c)) return poly_zero(f.ctx, f.coeff);
    Poly out = poly_zero(f.ctx, f.coeff);
    for (const auto& t : f.t) {
        Elem p = tk::mul(t.c, c);
        if (!is_zero(p)) out.t.push_back({t.m, p});
    }
    return out;
}

Poly pow_poly(const Poly& f, unsigned e) {
    Poly acc = poly_const(f.ctx, ring_one(f.coeff));
    Poly base = f;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        e >>= 1;
        if (e) base = mul(base, base);
    }
    return acc;
}

bool poly_eq(const Poly& f, const Poly& g) {
    if (!ctx_eq(f.ctx, g.ctx) || !ring_eq(f.coeff, g.coeff)) return false;
    if (f.t.size() != g.t.size()) return false;
    for (size_t i = 0; i < f.t.size(); ++i) {
        if (!(f.t[i].m == g.t[i].m)) return false;
        if (!eq(f.t[i].c, g.t[i].c)) return false;
    }
    return true;
}

// ---- calculus and substitution ----

Poly partial_derivative(const Poly& f, const std::string& var) {
    int i = f.ctx->index_of(var);
    if (i < 0) fail(Err::UnknownVariable, var);
    std::vector<Term> terms;
    for (const auto& t : f.t) {
        if (t.m.e[i] == 0) continue;
        Elem c = tk::mul(t.c, elem_int(f.coeff, Int(t.m.e[i])));
        if (is_zero(c)) continue;
        Term nt{t.m, c};
        nt.m.e[i] -= 1;
        terms.push_back(std::move(nt));
    }
    return poly_make(f.ctx, f.coeff, std::move(terms));
}

Poly substitute(const Poly& f, const std::map<std::string, Poly>& binds, const CtxPtr& target) {
    std::vector<const Poly*> bound(f.ctx->size(), nullptr);
    for (const auto& [name, val] : binds) {
        int i = f.ctx->index_of(name);
        if (i < 0) fail(Err::UnknownVariable, name);
        if (!ctx_eq(val.ctx, target) || !ring_eq(val.coeff, f.coeff))
            fail(Err::DomainIncompatible, "binding for " + name + " lives elsewhere");
        bound[i] = &val;
    }
    std::vector<int> untouched(f.ctx->size(), -1);
    Poly out = poly_zero(target, f.coeff);
    std::vector<std::vector<Poly>> powcache(f.ctx->size());
    auto power_of = [&](int i, unsigned e) -> const Poly& {
        auto& cache = powcache[i];
        if (cache.empty()) cache.push_back(poly_const(target, ring_one(f.coeff)));
        while (cache.size() <= e) cache.push_back(mul(cache.back(), *bound[i]));
        return cache[e];
    };
    for (const auto& t : f.t) {
        Monomial rest{std::vector<uint32_t>(target->size(), 0)};
        Poly piece = poly_const(target, t.c);
        for (size_t i = 0; i < t.m.e.size(); ++i) {
            if (t.m.e[i] == 0) continue;
            if (bound[i]) {
                piece = mul(piece, power_of((int)i, t.m.e[i]));
            } else {
                if (untouched[i] < 0) {
                    untouched[i] = target->index_of(f.ctx->flat[i]);
                    if (untouched[i] < 0)
                        fail(Err::UnknownVariable, f.ctx->flat[i] + " absent from target context");
                }
                rest.e[untouched[i]] += t.m.e[i];
            }
        }
        if (rest.total()) piece = mul(piece, poly_mono(target, ring_one(f.coeff), rest));
        out = add(out, piece);
    }
    return out;
}

Poly substitute_scalars(const Poly& f, const std::map<std::string, Elem>& binds) {
    std::vector<const Elem*> bound(f.ctx->size(), nullptr);
    for (const auto& [name, val] : binds) {
        int i = f.ctx->index_of(name);
        if (i < 0) fail(Err::UnknownVariable, name);
        if (!ring_eq(val.ring, f.coeff)) fail(Err::DomainIncompatible, "scalar for " + name);
        bound[i] = &val;
    }
    std::vector<Term> terms;
    for (const auto& t : f.t) {
        Elem c = t.c;
        Monomial m = t.m;
        for (size_t i = 0; i < m.e.size(); ++i) {
            if (m.e[i] && bound[i]) {
                c = tk::mul(c, pow_elem(*bound[i], m.e[i]));
                m.e[i] = 0;
            }
        }
        terms.push_back({m, c});
    }
    return poly_make(f.ctx, f.coeff, std::move(terms));
}

// ---- degrees, blocks ----

unsigned degree_in_group(const Poly& f, int group) {
    auto [begin, end] = f.ctx->span[group];
    unsigned d = 0;
    for (const auto& t : f.t) {
        unsigned s = 0;
        for (int i = begin; i < end; ++i) s += t.m.e[i];
        d = std::max(d, s);
    }
    return d;
}

bool homogeneous_in_group(const Poly& f, int group, unsigned* deg_out) {
    auto [begin, end] = f.ctx->span[group];
    bool first = true;
    unsigned d = 0;
    for (const auto& t : f.t) {
        unsigned s = 0;
        for (int i = begin; i < end; ++i) s += t.m.e[i];
        if (first) {
            d = s;
            first = false;
        } else if (s != d) {
            return false;
        }
    }
    if (deg_out) *deg_out = d;
    return true;
}

unsigned degree_in_var(const Poly& f, int var_index) {
    unsigned d = 0;
    for (const auto& t : f.t) d = std::max(d, (unsigned)t.m.e[var_index]);
    return d;
}

std::vector<std::pair<Monomial, Poly>> split_by_block(const Poly& f, Block which) {
    if (f.is_zero()) fail(Err::ZeroPolynomial, "cannot split the zero polynomial");
    auto acc = std::map<Monomial, Poly, MonoGreater>(MonoGreater{f.ctx.get()});
    for (const auto& t : f.t) {
        Monomial key{std::vector<uint32_t>(f.ctx->size(), 0)};
        Monomial rest = key;
        for (size_t i = 0; i < t.m.e.size(); ++i) {
            if (f.ctx->block_of((int)i) == which)
                key.e[i] = t.m.e[i];
            else
                rest.e[i] = t.m.e[i];
        }
        auto it = acc.find(key);
        if (it == acc.end()) it = acc.emplace(key, poly_zero(f.ctx, f.coeff)).first;
        it->second = add(it->second, poly_mono(f.ctx, t.c, rest));
    }
    std::vector<std::pair<Monomial, Poly>> out;
    for (auto& [m, p] : acc) out.push_back({m, std::move(p)});
    return out;
}

std::vector<Poly> coefficient_block(const Poly& f, Block which) {
    std::vector<Poly> out;
    for (auto& [m, p] : split_by_block(f, which)) out.push_back(std::move(p));
    return out;
}

std::vector<Elem> base_coefficients(const Poly& f) {
    std::vector<Elem> out;
    out.reserve(f.t.size());
    for (const auto& t : f.t) out.push_back(t.c);
    return out;
}

// ---- p-th powers ----

std::pair<bool, Poly> is_pth_power(const Poly& f) {
    Int ch = characteristic(f.coeff);
    if (ch == 0 || !is_prime(ch))
        fail(Err::WrongCharacteristic, "p-th power test needs prime characteristic");
    unsigned p = (unsigned)ch;
    Poly root = poly_zero(f.ctx, f.coeff);
    for (const auto& t : f.t) {
        Monomial m = t.m;
        for (auto& e : m.e) {
            if (e % p) return {false, poly_zero(f.ctx, f.coeff)};
            e /= p;
        }
        auto r = elem_pth_root(t.c);
        if (!r) return {false, poly_zero(f.ctx, f.coeff)};
        root.t.push_back({m, *r});
    }
    root = poly_make(f.ctx, f.coeff, std::move(root.t));
    if (!poly_eq(pow_poly(root, p), f)) return {false, poly_zero(f.ctx, f.coeff)};
    return {true, root};
}

Poly defrobenius(const Poly& f, unsigned p) {
    std::vector<Term> terms;
    for (const auto& t : f.t) {
        Term nt = t;
        for (auto& e : nt.m.e) {
            if (e % p) fail(Err::WrongCharacteristic, "exponent not divisible by p");
            e /= p;
        }
        terms.push_back(std::move(nt));
    }
    return poly_make(f.ctx, f.coeff, std::move(terms));
}

// ---- division and gcd ----

namespace {

bool mono_divides(const Monomial& a, const Monomial& b) {  // a | b
    for (size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] > b.e[i]) return false;
    return true;
}

Monomial mono_quot(const Monomial& b, const Monomial& a) {
    Monomial q = b;
    for (size_t i = 0; i < q.e.size(); ++i) q.e[i] -= a.e[i];
    return q;
}

std::set<int> vars_used(const Poly& f) {
    std::set<int> s;
    for (const auto& t : f.t)
        for (size_t i = 0; i < t.m.e.size(); ++i)
            if (t.m.e[i]) s.insert((int)i);
    return s;
}

// view in one variable: coefficient of v^k
std::map<unsigned, Poly> split_by_var(const Poly& f, int v) {
    std::map<unsigned, Poly> out;
    for (const auto& t : f.t) {
        unsigned k = t.m.e[v];
        Monomial rest = t.m;
        rest.e[v] = 0;
        auto it = out.find(k);
        if (it == out.end()) it = out.emplace(k, poly_zero(f.ctx, f.coeff)).first;
        it->second = add(it->second, poly_mono(f.ctx, t.c, rest));
    }
    return out;
}

Poly monic(const Poly& f) {
    if (f.is_zero()) return f;
    return mul_scalar(f, inv(f.lc()));
}

// pseudo-remainder of f by g in the variable v
Poly prem(const Poly& f, const Poly& g, int v) {
    unsigned dg = degree_in_var(g, v);
    auto gv = split_by_var(g, v);
    Poly m = gv.rbegin()->second;  // leading v-coefficient of g
    Poly r = f;
    while (!r.is_zero()) {
        unsigned dr = degree_in_var(r, v);
        if (dr < dg) break;
        auto rv = split_by_var(r, v);
        Poly lr = rv.rbegin()->second;
        Monomial shift{std::vector<uint32_t>(f.ctx->size(), 0)};
        shift.e[v] = dr - dg;
        Poly shifted = mul(poly_mono(f.ctx, ring_one(f.coeff), shift), g);
        r = sub(mul(r, m), mul(lr, shifted));
    }
    return r;
}

Poly poly_content_in_var(const Poly& f, int v) {
    Poly c = poly_zero(f.ctx, f.coeff);
    for (auto& [k, coeff] : split_by_var(f, v)) c = gcd_poly(c, coeff);
    return c;
}

}  // namespace

std::optional<Poly> divide_exact(const Poly& f, const Poly& g) {
    if (g.is_zero()) fail(Err::ZeroPolynomial, "division by zero polynomial");
    require_same(f, g);
    if (!is_field(f.coeff)) fail(Err::NonFieldCoefficients, "exact division needs a field");
    Poly r = f;
    Poly q = poly_zero(f.ctx, f.coeff);
    Elem glc_inv = inv(g.lc());
    while (!r.is_zero()) {
        if (!mono_divides(g.lm(), r.lm())) return std::nullopt;
        Elem c = mul(r.lc(), glc_inv);
        Poly piece = poly_mono(f.ctx, c, mono_quot(r.lm(), g.lm()));
        q = add(q, piece);
        r = sub(r, mul(piece, g));
    }
    return q;
}

Poly gcd_poly(const Poly& f, const Poly& g) {
    if (!is_field(f.coeff)) fail(Err::NonFieldCoefficients, "gcd needs a coefficient field");
    if (f.is_zero()) return monic(g);
    if (g.is_zero()) return monic(f);
    if (f.is_constant() || g.is_constant()) return poly_const(f.ctx, ring_one(f.coeff));
    require_same(f, g);
    auto uf = vars_used(f), ug = vars_used(g);
    std::set<int> all = uf;
    all.insert(ug.begin(), ug.end());
    int v = *all.rbegin();
    if (degree_in_var(f, v) == 0 || degree_in_var(g, v) == 0) {
        // main variable missing from one side: gcd divides that side's content
        const Poly& flat = degree_in_var(f, v) == 0 ? f : g;
        const Poly& tall = degree_in_var(f, v) == 0 ? g : f;
        return gcd_poly(flat, poly_content_in_var(tall, v));
    }
    Poly cf = poly_content_in_var(f, v);
    Poly cg = poly_content_in_var(g, v);
    Poly c = gcd_poly(cf, cg);
    Poly fp = *divide_exact(f, cf);
    Poly gp = *divide_exact(g, cg);
    while (!gp.is_zero()) {
        Poly r = prem(fp, gp, v);
        fp = gp;
        if (r.is_zero()) {
            gp = r;
        } else {
            gp = *divide_exact(r, poly_content_in_var(r, v));
        }
    }
    return monic(mul(c, *divide_exact(fp, poly_content_in_var(fp, v))));
}

Poly dehomogenize(const Poly& f, int var_index) {
    std::vector<Term> terms;
    for (const auto& t : f.t) {
        Term nt = t;
        nt.m.e[var_index] = 0;
        terms.push_back(std::move(nt));
    }
    return poly_make(f.ctx, f.coeff, std::move(terms));
}

// ---- parameter collapse/flatten ----

Poly collapse_params(const Poly& f, const RingPtr& ext) {
    if (ext->kind != RingKind::TranscExt) fail(Err::DomainIncompatible, "not an extension ring");
    if (!ring_eq(f.coeff, ext->base))
        fail(Err::DomainIncompatible, "coefficients do not match the extension base");
    std::vector<VarGroup> keep;
    std::vector<int> param_slot(f.ctx->size(), -1);
    for (size_t g = 0; g < f.ctx->groups.size(); ++g) {
        const auto& grp = f.ctx->groups[g];
        if (grp.block == Block::Geometric) {
            keep.push_back(grp);
            continue;
        }
        for (const auto& v : grp.vars) {
            int slot = -1;
            for (size_t k = 0; k < ext->vars.size(); ++k)
                if (ext->vars[k] == v) slot = (int)k;
            if (slot < 0) fail(Err::UnknownVariable, "parameter " + v + " not in " + ext->name());
            param_slot[f.ctx->index_of(v)] = slot;
        }
    }
    CtxPtr out_ctx = make_context(keep);
    const CtxPtr& pctx = ext->payload_ctx;
    // group terms by their geometric part; each bucket is a parameter polynomial
    std::map<Monomial, Poly, MonoGreater> buckets{MonoGreater{out_ctx.get()}};
    for (const auto& t : f.t) {
        Monomial geo{std::vector<uint32_t>(out_ctx->size(), 0)};
        Monomial par{std::vector<uint32_t>(pctx->size(), 0)};
        for (size_t i = 0; i < t.m.e.size(); ++i) {
            if (!t.m.e[i]) continue;
            if (param_slot[i] >= 0) {
                par.e[param_slot[i]] = t.m.e[i];
            } else {
                int k = out_ctx->index_of(f.ctx->flat[i]);
                geo.e[k] = t.m.e[i];
            }
        }
        auto it = buckets.find(geo);
        if (it == buckets.end()) it = buckets.emplace(geo, poly_zero(pctx, f.coeff)).first;
        it->second = add(it->second, poly_mono(pctx, t.c, par));
    }
    Poly out = poly_zero(out_ctx, ext);
    for (auto& [m, np] : buckets)
        out.t.push_back({m, elem_frac(ext, np, poly_const(pctx, ring_one(f.coeff)))});
    return out;
}

Poly flatten_params(const Poly& f, const CtxPtr& combined) {
    const RingPtr& ext = f.coeff;
    if (ext->kind != RingKind::TranscExt) fail(Err::DomainIncompatible, "not an extension ring");
    std::vector<Term> terms;
    for (const auto& t : f.t) {
        const Poly& den = *t.c.den;
        if (!den.is_constant() || !is_unit(den.constant_coeff()) ||
            !eq(den.constant_coeff(), ring_one(ext->base)))
            fail(Err::DomainIncompatible, "coefficient with non-trivial denominator");
        for (const auto& pt : t.c.num->t) {
            Monomial m{std::vector<uint32_t>(combined->size(), 0)};
            for (size_t i = 0; i < t.m.e.size(); ++i) {
                int k = combined->index_of(f.ctx->flat[i]);
                if (k < 0) fail(Err::UnknownVariable, f.ctx->flat[i]);
                m.e[k] = t.m.e[i];
            }
            for (size_t i = 0; i < pt.m.e.size(); ++i) {
                if (!pt.m.e[i]) continue;
                int k = combined->index_of(ext->vars[i]);
                if (k < 0) fail(Err::UnknownVariable, ext->vars[i]);
                m.e[k] = pt.m.e[i];
            }
            terms.push_back({m, pt.c});
        }
    }
    return poly_make(combined, ext->base, std::move(terms));
}

// ---- emission ----

namespace {

std::string elem_atom(const Elem& c);

std::string term_str(const Poly& f, const Term& t) {
    std::vector<std::string> factors;
    // parameter variables read as coefficients, so they come first
    for (int pass = 0; pass < 2; ++pass) {
        Block want = pass == 0 ? Block::Parameter : Block::Geometric;
        for (size_t i = 0; i < t.m.e.size(); ++i) {
            if (!t.m.e[i] || f.ctx->block_of((int)i) != want) continue;
            const std::string& v = f.ctx->flat[i];
            if (t.m.e[i] == 1)
                factors.push_back(v);
            else
                factors.push_back("(^ " + v + " " + std::to_string(t.m.e[i]) + ")");
        }
    }
    bool coeff_is_one = t.c.ring && is_unit(t.c) && eq(t.c, ring_one(t.c.ring));
    std::string cs = elem_atom(t.c);
    if (factors.empty()) return cs;
    if (!coeff_is_one) factors.insert(factors.begin(), cs);
    if (factors.size() == 1) return factors[0];
    std::string s = "(*";
    for (const auto& fx : factors) s += " " + fx;
    return s + ")";
}

std::string elem_atom(const Elem& c) {
    switch (c.ring->kind) {
        case RingKind::Integers:
        case RingKind::PrimeField:
        case RingKind::IntegersMod: return int_str(c.z);
        case RingKind::Rationals:
        case RingKind::LocalizedIntegers: return rat_str(c.q);
        case RingKind::PolyRing:
        case RingKind::Quotient: return poly_str(*c.p);
        case RingKind::TranscExt: {
            const Poly& den = *c.den;
            bool trivial = den.is_constant() && eq(den.constant_coeff(), ring_one(c.ring->base));
            if (trivial && c.num->is_constant()) return elem_atom(c.num->constant_coeff());
            if (trivial) return poly_str(*c.num);
            return "(frac " + poly_str(*c.num) + " " + poly_str(*c.den) + ")";
        }
    }
    return "?";
}

}  // namespace

std::string poly_str(const Poly& f) {
    if (f.is_zero()) return "0";
    if (f.coeff->kind == RingKind::TranscExt) {
        // inline polynomial coefficients as parameter variables when possible
        bool flat_ok = true;
        for (const auto& t : f.t) {
            const Poly& den = *t.c.den;
            if (!(den.is_constant() && eq(den.constant_coeff(), ring_one(f.coeff->base)))) {
                flat_ok = false;
                break;
            }
        }
        for (const auto& g : f.ctx->groups)
            if (g.block == Block::Parameter) flat_ok = false;
        if (flat_ok) {
            std::vector<VarGroup> groups = f.ctx->groups;
            groups.push_back(VarGroup{"t", Block::Parameter, f.coeff->vars});
            return poly_str(flatten_params(f, make_context(groups)));
        }
    }
    if (f.t.size() == 1) return term_str(f, f.t[0]);
    std::string s = "(+";
    for (const auto& t : f.t) s += " " + term_str(f, t);
    return s + ")";
}

}  // namespace tk
