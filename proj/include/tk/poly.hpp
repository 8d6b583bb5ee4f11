#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tk/context.hpp"
#include "tk/guard.hpp"
#include "tk/ring.hpp"

namespace tk {

struct Monomial {
    std::vector<uint32_t> e;
    unsigned total() const {
        unsigned s = 0;
        for (auto v : e) s += v;
        return s;
    }
    bool operator==(const Monomial& o) const { return e == o.e; }
};

// graded reverse lexicographic within each group, groups compared in context
// order (geometric groups first); returns <0, 0, >0 with >0 meaning a > b
int mono_cmp(const Context& ctx, const Monomial& a, const Monomial& b);

struct Term {
    Monomial m;
    Elem c;
};

// sparse polynomial, terms strictly descending under mono_cmp, no zero terms
struct Poly {
    CtxPtr ctx;
    RingPtr coeff;
    std::vector<Term> t;

    bool is_zero() const { return t.empty(); }
    bool is_constant() const { return t.empty() || (t.size() == 1 && t[0].m.total() == 0); }
    const Elem& lc() const { return t.front().c; }
    const Monomial& lm() const { return t.front().m; }
    Elem constant_coeff() const;
    unsigned total_degree() const;  // 0 for the zero polynomial
};

Poly poly_zero(const CtxPtr& ctx, const RingPtr& R);
Poly poly_const(const CtxPtr& ctx, const Elem& c);
Poly poly_var(const CtxPtr& ctx, const RingPtr& R, const std::string& name);
Poly poly_mono(const CtxPtr& ctx, const Elem& c, const Monomial& m);
// build from unsorted term list (merges duplicates, drops zeros)
Poly poly_make(const CtxPtr& ctx, const RingPtr& R, std::vector<Term> terms);

Poly add(const Poly& f, const Poly& g);
Poly sub(const Poly& f, const Poly& g);
Poly neg(const Poly& f);
Poly mul(const Poly& f, const Poly& g);
Poly mul_scalar(const Poly& f, const Elem& c);
Poly pow_poly(const Poly& f, unsigned e);
bool poly_eq(const Poly& f, const Poly& g);

Poly partial_derivative(const Poly& f, const std::string& var);

// substitute variables by polynomials over the target context (unbound
// variables must exist in the target under the same name)
Poly substitute(const Poly& f, const std::map<std::string, Poly>& binds, const CtxPtr& target);
// substitute variables by coefficients, context unchanged
Poly substitute_scalars(const Poly& f, const std::map<std::string, Elem>& binds);

unsigned degree_in_group(const Poly& f, int group);
bool homogeneous_in_group(const Poly& f, int group, unsigned* deg_out = nullptr);
unsigned degree_in_var(const Poly& f, int var_index);

// coefficients of f seen as a polynomial in the chosen block, each a
// polynomial in the complementary variables; paired with its block monomial
std::vector<std::pair<Monomial, Poly>> split_by_block(const Poly& f, Block which);
std::vector<Poly> coefficient_block(const Poly& f, Block which);
// plain coefficient list of all terms
std::vector<Elem> base_coefficients(const Poly& f);

// (true, g) with g^p = f when f is a p-th power over its coefficient domain
std::pair<bool, Poly> is_pth_power(const Poly& f);
// inverse Frobenius on exponents only: f(x) = F(x^p) -> F; requires all
// exponents divisible by p
Poly defrobenius(const Poly& f, unsigned p);

// exact division; empty when g does not divide f
std::optional<Poly> divide_exact(const Poly& f, const Poly& g);
// gcd over a coefficient field, monic-normalized; content/primitive-part
// recursion in the last occurring variable
Poly gcd_poly(const Poly& f, const Poly& g);

Poly dehomogenize(const Poly& f, int var_index);  // var -> 1
// move coefficients of f into ext = R(t...): parameter variables named by the
// extension are absorbed into TranscExt coefficients; result context keeps the
// remaining variables
Poly collapse_params(const Poly& f, const RingPtr& ext);
// inverse of collapse_params for fraction-free coefficients: spread TranscExt
// numerators back out as parameter variables (denominators must be constant)
Poly flatten_params(const Poly& f, const CtxPtr& combined);

std::string poly_str(const Poly& f);  // canonical s-expression

}  // namespace tk
