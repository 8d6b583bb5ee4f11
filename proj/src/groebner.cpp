#include "tk/groebner.hpp"

#include <algorithm>
#include <set>

namespace tk {

namespace {

bool mono_divides(const Monomial& a, const Monomial& b) {
    for (size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] > b.e[i]) return false;
    return true;
}

Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial m = a;
    for (size_t i = 0; i < m.e.size(); ++i) m.e[i] = std::max(a.e[i], b.e[i]);
    return m;
}

Monomial mono_quot(const Monomial& b, const Monomial& a) {
    Monomial q = b;
    for (size_t i = 0; i < q.e.size(); ++i) q.e[i] -= a.e[i];
    return q;
}

bool mono_coprime(const Monomial& a, const Monomial& b) {
    for (size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] && b.e[i]) return false;
    return true;
}

void validate(const std::vector<Poly>& gens) {
    if (gens.empty()) return;
    if (!is_field(gens[0].coeff))
        fail(Err::NonFieldCoefficients, "basis computation over " + gens[0].coeff->name());
    for (const auto& g : gens)
        if (!ctx_eq(g.ctx, gens[0].ctx) || !ring_eq(g.coeff, gens[0].coeff))
            fail(Err::ContextMismatch, "generators live in different contexts");
}

Poly spoly(const Poly& f, const Poly& g) {
    Monomial L = mono_lcm(f.lm(), g.lm());
    Poly a = mul(poly_mono(f.ctx, inv(f.lc()), mono_quot(L, f.lm())), f);
    Poly b = mul(poly_mono(g.ctx, inv(g.lc()), mono_quot(L, g.lm())), g);
    return sub(a, b);
}

struct Pair {
    size_t i, j;
    Monomial lcm;
    unsigned deg;
};

// round-based Buchberger: all pending pairs of minimal lcm degree reduce
// against a frozen snapshot of the basis (independently, so the batch may run
// on threads), then integrate sequentially in index order
std::vector<Poly> buchberger(const std::vector<Poly>& gens, bool threaded) {
    validate(gens);
    std::vector<Poly> G;
    for (const auto& g : gens)
        if (!g.is_zero()) G.push_back(mul_scalar(g, inv(g.lc())));
    std::vector<Pair> pending;
    std::set<std::pair<size_t, size_t>> done;
    auto push_pairs = [&](size_t m) {
        for (size_t i = 0; i < m; ++i) {
            Monomial L = mono_lcm(G[i].lm(), G[m].lm());
            pending.push_back(Pair{i, m, L, L.total()});
        }
    };
    for (size_t m = 1; m < G.size(); ++m) push_pairs(m);
    while (!pending.empty()) {
        unsigned dmin = pending[0].deg;
        for (const auto& p : pending) dmin = std::min(dmin, p.deg);
        std::vector<Pair> round;
        std::vector<Pair> rest;
        for (auto& p : pending)
            (p.deg == dmin ? round : rest).push_back(p);
        pending = std::move(rest);
        std::sort(round.begin(), round.end(), [](const Pair& a, const Pair& b) {
            return a.i != b.i ? a.i < b.i : a.j < b.j;
        });
        // criteria against completed pairs only, which stays conservative
        std::vector<Pair> kept;
        for (auto& p : round) {
            done.insert({p.i, p.j});
            if (mono_coprime(G[p.i].lm(), G[p.j].lm())) continue;
            bool chained = false;
            for (size_t k = 0; k < G.size() && !chained; ++k) {
                if (k == p.i || k == p.j) continue;
                if (!mono_divides(G[k].lm(), p.lcm)) continue;
                auto key = [&](size_t a, size_t b) {
                    return std::make_pair(std::min(a, b), std::max(a, b));
                };
                chained = done.count(key(p.i, k)) && done.count(key(p.j, k));
            }
            if (chained) continue;
            kept.push_back(p);
        }
        const std::vector<Poly> frozen = G;
        std::vector<Poly> reduced(kept.size(), Poly{});
#ifdef TK_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) if (threaded)
#endif
        for (long k = 0; k < (long)kept.size(); ++k)
            reduced[k] = normal_form(spoly(frozen[kept[k].i], frozen[kept[k].j]), frozen);
        (void)threaded;
        for (size_t k = 0; k < kept.size(); ++k) {
            Poly r = normal_form(reduced[k], G);
            if (r.is_zero()) continue;
            G.push_back(mul_scalar(r, inv(r.lc())));
            push_pairs(G.size() - 1);
        }
    }
    // minimal basis: drop members whose leading monomial another one divides
    std::vector<Poly> minimal;
    for (size_t i = 0; i < G.size(); ++i) {
        bool redundant = false;
        for (size_t j = 0; j < G.size() && !redundant; ++j) {
            if (i == j) continue;
            if (!mono_divides(G[j].lm(), G[i].lm())) continue;
            // on equal leading monomials keep the earlier one
            redundant = !(G[j].lm() == G[i].lm()) || j < i;
        }
        if (!redundant) minimal.push_back(G[i]);
    }
    // reduced basis: every member in normal form against the others
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < minimal.size(); ++i) {
            std::vector<Poly> others;
            for (size_t j = 0; j < minimal.size(); ++j)
                if (j != i) others.push_back(minimal[j]);
            Poly r = normal_form(minimal[i], others);
            if (r.is_zero()) {
                minimal.erase(minimal.begin() + i);
                changed = true;
                break;
            }
            r = mul_scalar(r, inv(r.lc()));
            if (!poly_eq(r, minimal[i])) {
                minimal[i] = r;
                changed = true;
            }
        }
    }
    std::sort(minimal.begin(), minimal.end(), [](const Poly& a, const Poly& b) {
        return mono_cmp(*a.ctx, a.lm(), b.lm()) > 0;
    });
    return minimal;
}

}  // namespace

Poly normal_form(const Poly& f, const std::vector<Poly>& basis) {
    Poly p = f;
    Poly r = poly_zero(f.ctx, f.coeff);
    while (!p.is_zero()) {
        bool hit = false;
        for (const auto& g : basis) {
            if (g.is_zero() || !mono_divides(g.lm(), p.lm())) continue;
            Elem c = mul(p.lc(), inv(g.lc()));
            p = sub(p, mul(poly_mono(p.ctx, c, mono_quot(p.lm(), g.lm())), g));
            hit = true;
            break;
        }
        if (!hit) {
            Poly lt = poly_mono(p.ctx, p.lc(), p.lm());
            r = add(r, lt);
            p = sub(p, lt);
        }
    }
    return r;
}

std::vector<Poly> groebner_basis(const std::vector<Poly>& gens) {
    return buchberger(gens, false);
}

std::vector<Poly> groebner_basis_batched(const std::vector<Poly>& gens) {
    return buchberger(gens, true);
}

bool is_unit_ideal(const std::vector<Poly>& gens) {
    for (const auto& g : gens)
        if (!g.is_zero() && g.is_constant()) return true;  // cheap early exit
    auto gb = groebner_basis(gens);
    for (const auto& g : gb)
        if (g.is_constant() && !g.is_zero()) return true;
    return false;
}

bool proj_is_empty(const std::vector<Poly>& gens) {
    if (gens.empty()) return false;
    const CtxPtr& ctx = gens[0].ctx;
    std::vector<int> geo_groups;
    for (int g = 0; g < (int)ctx->groups.size(); ++g)
        if (ctx->groups[g].block == Block::Geometric) geo_groups.push_back(g);
    for (const auto& f : gens)
        for (int g : geo_groups)
            if (!homogeneous_in_group(f, g, nullptr))
                fail(Err::NotHomogeneous, "generator " + poly_str(f) + " in group " +
                                              ctx->groups[g].label);
    if (geo_groups.empty()) return is_unit_ideal(gens);
    // walk the product of charts, one dehomogenized variable per group
    std::vector<int> pick(geo_groups.size(), 0);
    while (true) {
        std::vector<Poly> chart;
        for (const auto& f : gens) {
            Poly h = f;
            for (size_t k = 0; k < geo_groups.size(); ++k) {
                auto [begin, end] = ctx->span[geo_groups[k]];
                (void)end;
                h = dehomogenize(h, begin + pick[k]);
            }
            chart.push_back(h);
        }
        if (!is_unit_ideal(chart)) return false;
        size_t k = 0;
        for (; k < geo_groups.size(); ++k) {
            auto [begin, end] = ctx->span[geo_groups[k]];
            if (++pick[k] < end - begin) break;
            pick[k] = 0;
        }
        if (k == geo_groups.size()) break;
    }
    return true;
}

int krull_dimension(const CtxPtr& ctx, const std::vector<Poly>& gens) {
    for (const auto& g : gens)
        if (!ctx_eq(g.ctx, ctx)) fail(Err::ContextMismatch, "generator outside the context");
    int m = ctx->size();
    if (m > 20) fail(Err::EnumerationTooLarge, "dimension search over " + std::to_string(m) +
                                                   " variables");
    auto gb = groebner_basis(gens);
    for (const auto& g : gb)
        if (g.is_constant() && !g.is_zero()) return -1;
    std::vector<Monomial> lms;
    for (const auto& g : gb) lms.push_back(g.lm());
    int best = 0;
    for (uint32_t mask = 0; mask < (1u << m); ++mask) {
        int size = __builtin_popcount(mask);
        if (size <= best) continue;
        bool independent = true;
        for (const auto& lm : lms) {
            bool inside = true;
            for (int i = 0; i < m && inside; ++i)
                if (lm.e[i] && !(mask & (1u << i))) inside = false;
            if (inside) {
                independent = false;
                break;
            }
        }
        if (independent) best = size;
    }
    return best;
}

}  // namespace tk
