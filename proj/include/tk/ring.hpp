#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tk/context.hpp"
#include "tk/error.hpp"
#include "tk/numbers.hpp"

namespace tk {

struct Poly;
using PolyPtr = std::shared_ptr<const Poly>;

enum class RingKind {
    Integers,           // Z
    Rationals,          // Q
    PrimeField,         // F_p
    IntegersMod,        // Z/n, n >= 2, zero divisors allowed
    LocalizedIntegers,  // Z_(p): rationals with p-free denominator
    PolyRing,           // k[x...] over a field k
    Quotient,           // k[x]/(f), f monic non-unit
    TranscExt,          // R(t1,...,tn)
};

struct Ring;
using RingPtr = std::shared_ptr<const Ring>;

struct Ring : std::enable_shared_from_this<Ring> {
    RingKind kind = RingKind::Integers;
    Int n;                           // p or n where applicable
    RingPtr base;                    // k for PolyRing/Quotient, R for TranscExt
    std::vector<std::string> vars;   // PolyRing vars / Quotient var / TranscExt params
    PolyPtr modulus;                 // Quotient: monic modulus over base
    bool modulus_irreducible = false;
    CtxPtr payload_ctx;              // context of payload polynomials

    std::string name() const;
};

RingPtr ring_Z();
RingPtr ring_Q();
RingPtr ring_Fp(const Int& p);
RingPtr ring_Zmod(const Int& n);
RingPtr ring_Zloc(const Int& p);
RingPtr ring_poly(const RingPtr& field, std::vector<std::string> vars);
RingPtr ring_quot(const RingPtr& field, const std::string& var, const Poly& modulus);
RingPtr ring_transc(const RingPtr& base, std::vector<std::string> params);

bool ring_eq(const RingPtr& a, const RingPtr& b);
bool is_field(const RingPtr& r);
// additive characteristic: 0, p, or n (composite allowed for Z/n)
Int characteristic(const RingPtr& r);

// Elements are immutable and kept canonical:
//   Integers/PrimeField/IntegersMod -> z (residues in [0,n))
//   Rationals/LocalizedIntegers     -> q reduced, positive denominator
//   PolyRing/Quotient               -> p (Quotient representatives reduced mod modulus)
//   TranscExt                       -> num/den, den with unit content, base-specific
//                                      normalization (see elem_frac)
struct Elem {
    RingPtr ring;
    Int z;
    Rat q;
    PolyPtr p;
    PolyPtr num, den;
};

Elem elem_int(const RingPtr& R, const Int& v);
Elem elem_rat(const RingPtr& R, const Rat& v);
Elem elem_poly(const RingPtr& R, const Poly& payload);
Elem elem_frac(const RingPtr& R, const Poly& num, const Poly& den);
Elem ring_zero(const RingPtr& R);
Elem ring_one(const RingPtr& R);
// embed a base-ring element into R(t...)
Elem to_transc(const RingPtr& ext, const Elem& a);

Elem add(const Elem& a, const Elem& b);
Elem sub(const Elem& a, const Elem& b);
Elem mul(const Elem& a, const Elem& b);
Elem neg(const Elem& a);
Elem inv(const Elem& a);
Elem pow_elem(const Elem& a, unsigned e);
bool is_zero(const Elem& a);
bool is_unit(const Elem& a);
bool eq(const Elem& a, const Elem& b);

std::string elem_str(const Elem& a);

// true iff the ideal generated by coeffs is the unit ideal
bool content_is_unit(const std::vector<Elem>& coeffs);

// all elements of a finite field, or empty when infinite/unsupported/too big
std::optional<std::vector<Elem>> field_elements(const RingPtr& k, size_t limit);

struct MaximalIdealDesc {
    RingPtr ring;
    Elem gen;          // zero element for fields
    RingPtr residue;   // R/m
    std::string label;
};

MaximalIdealDesc maximal_ideal(const RingPtr& R, const Elem& gen);
std::vector<MaximalIdealDesc> enumerate_maximal_ideals(const RingPtr& R);
Elem residue_map(const Elem& a, const MaximalIdealDesc& m);
// p-th root in a perfect residue field of characteristic p
Elem pth_root_residue(const Elem& a);
// p-th root of a coefficient in prime characteristic; empty when none exists
std::optional<Elem> elem_pth_root(const Elem& a);
// canonical lift from a residue ring back into R
Elem lift_elem(const Elem& a, const RingPtr& R);

}  // namespace tk
