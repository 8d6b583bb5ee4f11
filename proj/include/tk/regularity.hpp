#pragma once

#include <string>
#include <vector>

#include "tk/bertini.hpp"
#include "tk/poly.hpp"
#include "tk/ring.hpp"

namespace tk {

enum class Verdict {
    SmoothOverField,
    RegularCertified,
    NotRegular,
    NonReduced,
    Reduced,
    Inconclusive,
};

const char* verdict_name(Verdict v);

struct RegularityReport {
    Verdict verdict = Verdict::Inconclusive;
    std::vector<std::string> evidence;
    std::vector<Poly> witness;  // maximal-ideal parameters, p-th root, or repeated factor
    bool verified = false;
};

// Jacobian criterion over a field: hypersurface, or a complete intersection
// with its codimension declared (= number of generators)
bool jacobian_smooth(const RingPtr& base, const CtxPtr& ctx, const std::vector<Poly>& I,
                     int codim = -1);

// structural certificate: X regular => X^univ regular (bundle) => X^gen
// regular (localization of a polynomial extension)
RegularityReport certify_generic_regular(const ProjMorphism& phi);

// fiber-by-fiber smoothness over Z_(p) (complete, needs the properness flag)
// or Z (partial, over the listed primes); field bases delegate to the Jacobian
RegularityReport fiberwise_smooth(const RingPtr& base, const CtxPtr& ctx,
                                  const std::vector<Poly>& I, bool proper_asserted,
                                  const std::vector<Int>& primes = {});

RegularityReport reducedness_check(const Poly& f);

struct SurveyRow {
    std::vector<Elem> coeffs;
    std::string cls;  // smooth | singular-reduced | non-reduced
    std::string evidence;
};

struct SurveyTable {
    Int q;
    std::vector<SurveyRow> rows;
    size_t smooth = 0, singular_reduced = 0, non_reduced = 0;
};

// classify every hyperplane class of P^n(F_q); serial or OpenMP-parallel with
// identical output either way
SurveyTable member_survey(const ProjMorphism& phi, bool threaded = false, size_t guard = 10000);

// the mixed-characteristic non-regularity witness for the family
// x0 y0^p + x1 y1^p + x2 y2^p under the first projection
RegularityReport mixedchar_witness(const ProjMorphism& phi, const Hyperplane& H);

// f lies in the square of the maximal ideal described by params
bool local_order2_vanishes(const Poly& f, const std::vector<Poly>& params);

}  // namespace tk
