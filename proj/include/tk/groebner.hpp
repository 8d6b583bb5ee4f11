#pragma once

#include <vector>

#include "tk/poly.hpp"

namespace tk {

// remainder of f under multivariate division by basis (field coefficients);
// no term of the result is divisible by any basis leading monomial
Poly normal_form(const Poly& f, const std::vector<Poly>& basis);

// reduced monic Groebner basis for the context order; unique and sorted by
// descending leading monomial, so results are reproducible
std::vector<Poly> groebner_basis(const std::vector<Poly>& gens);
// batch variant: S-polynomials of equal lcm degree reduce against a frozen
// basis (in parallel when OpenMP is on) and integrate in index order, which
// keeps the result bit-identical to groebner_basis
std::vector<Poly> groebner_basis_batched(const std::vector<Poly>& gens);

bool is_unit_ideal(const std::vector<Poly>& gens);

// emptiness of V(gens) inside the product of projective spaces spanned by the
// geometric groups of the context: every chart (one variable per group set to
// one) must carry the unit ideal
bool proj_is_empty(const std::vector<Poly>& gens);

// Krull dimension of ctx-polynomials modulo (gens); -1 for the unit ideal
// (gens may be empty: the zero ideal has dimension ctx->size())
int krull_dimension(const CtxPtr& ctx, const std::vector<Poly>& gens);

}  // namespace tk
