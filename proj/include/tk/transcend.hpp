#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tk/poly.hpp"
#include "tk/ring.hpp"

namespace tk {

// image of an extension element under R(t...) -> (R/I)(t...)
struct ResidueImage {
    RingPtr ring;
    Elem value;
};

// kappa tensor_R R(t...) together with the reduction procedure into it
struct FiberDescription {
    RingPtr fiber;
    std::function<Elem(const Elem&)> map_elem;
    std::string label;
};

// f lies in the denominator set U, decided by its coefficient content
bool is_admissible_denominator(const Poly& f);

// coefficientwise reduction of num/den modulo the ideal generated in the base
ResidueImage reduce_mod_ideal(const Elem& a, const std::vector<Elem>& gens);

// admissible lift of fbar over R/(gens) back to R: coefficient lifts plus the
// tail gens[k] * t1^(N+1+k), N = deg fbar
Poly lift_from_quotient(const Poly& fbar, const RingPtr& R, const std::vector<Elem>& gens);

// R(t_1..t_n) re-read as R(t_1..t_{n-1})(t_n); identity when n = 1
Elem curry(const Elem& a);
// inverse: merges a nested extension back into one parameter block
Elem uncurry(const Elem& b);

// h = a * g over a PID base with g of unit content; returns (a, g)
std::pair<Elem, Poly> content_peel(const Poly& h);

// fiber over a maximal ideal of the base: (R/m)(t...)
FiberDescription fiber_description(const RingPtr& ext, const MaximalIdealDesc& m);
// fiber over the fraction field of a PID base: Frac(R)(t...)
FiberDescription fiber_description_fraction(const RingPtr& ext);

// num/(f^k * rest) rewritten as a canonical element of ext
Elem rebase_chart(const RingPtr& ext, const Poly& num, const Poly& f, unsigned k,
                  const Poly& rest);

}  // namespace tk
