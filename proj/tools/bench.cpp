// benchmark: OpenMP kernels against their serial reference implementations.
// --quick runs small sizes and is wired into ctest as a smoke test; either
// way the parallel output must match the serial output exactly.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "tk/bertini.hpp"
#include "tk/groebner.hpp"
#include "tk/regularity.hpp"

#ifdef TK_HAVE_OPENMP
#include <omp.h>
#endif

using namespace tk;

namespace {

template <typename F>
double time_ms(F&& body) {
    auto t0 = std::chrono::steady_clock::now();
    body();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

ProjMorphism frobenius_on_P(const RingPtr& k, int n, unsigned p) {
    std::vector<std::string> vars;
    for (int i = 0; i <= n; ++i) vars.push_back("x" + std::to_string(i));
    CtxPtr c = geometric_context(vars);
    std::vector<Poly> forms;
    for (const auto& v : vars) forms.push_back(pow_poly(poly_var(c, k, v), p));
    return make_morphism(k, c, {}, forms);
}

bool tables_match(const SurveyTable& a, const SurveyTable& b) {
    if (a.rows.size() != b.rows.size()) return false;
    if (a.smooth != b.smooth || a.singular_reduced != b.singular_reduced ||
        a.non_reduced != b.non_reduced)
        return false;
    for (size_t i = 0; i < a.rows.size(); ++i) {
        if (a.rows[i].cls != b.rows[i].cls) return false;
        if (a.rows[i].evidence != b.rows[i].evidence) return false;
        if (a.rows[i].coeffs.size() != b.rows[i].coeffs.size()) return false;
        for (size_t j = 0; j < a.rows[i].coeffs.size(); ++j)
            if (!eq(a.rows[i].coeffs[j], b.rows[i].coeffs[j])) return false;
    }
    return true;
}

bool bases_match(const std::vector<Poly>& a, const std::vector<Poly>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!poly_eq(a[i], b[i])) return false;
    return true;
}

// random homogeneous-free dense-ish polynomial for the Groebner runs
Poly rnd_poly(const CtxPtr& ctx, const RingPtr& k, std::mt19937_64& gen, int terms, int deg,
              long cmax) {
    std::uniform_int_distribution<int> de(0, deg);
    std::uniform_int_distribution<long> co(1, cmax);
    Poly out = poly_const(ctx, elem_int(k, 0));
    for (int t = 0; t < terms; ++t) {
        Monomial m{std::vector<uint32_t>(ctx->size(), 0)};
        int budget = de(gen);
        for (int d = 0; d < budget; ++d)
            m.e[std::uniform_int_distribution<size_t>(0, ctx->size() - 1)(gen)] += 1;
        out = add(out, poly_mono(ctx, elem_int(k, co(gen)), m));
    }
    return out;
}

struct Tally {
    int ran = 0;
    int mismatched = 0;
};

void bench_survey(bool quick, Tally& tally) {
    struct Size {
        unsigned p;
        int n;
    };
    std::vector<Size> sizes = quick ? std::vector<Size>{{3, 2}, {5, 2}}
                                    : std::vector<Size>{{7, 2}, {13, 2}, {5, 3}, {7, 3}};
    std::printf("member_survey: serial reference vs threaded kernel\n");
    for (const auto& s : sizes) {
        ProjMorphism phi = frobenius_on_P(ring_Fp(s.p), s.n, s.p);
        SurveyTable serial, threaded;
        double ts = time_ms([&] { serial = member_survey(phi, false, 100000); });
        double tp = time_ms([&] { threaded = member_survey(phi, true, 100000); });
        bool ok = tables_match(serial, threaded);
        ++tally.ran;
        if (!ok) ++tally.mismatched;
        std::printf("  P^%d/F%-2u  rows=%4zu  serial=%9.2fms  openmp=%9.2fms  speedup=%4.2fx  %s\n",
                    s.n, s.p, serial.rows.size(), ts, tp, tp > 0 ? ts / tp : 0.0,
                    ok ? "match" : "MISMATCH");
    }
}

void bench_groebner(bool quick, Tally& tally) {
    std::mt19937_64 gen(20260819);
    struct Size {
        int vars, gens, terms, deg;
        int reps;
    };
    std::vector<Size> sizes = quick ? std::vector<Size>{{3, 3, 3, 2, 3}}
                                    : std::vector<Size>{{3, 3, 4, 2, 4}, {3, 4, 4, 3, 3}, {4, 4, 4, 2, 3}};
    RingPtr k = ring_Fp(7);
    std::printf("groebner_basis: serial reduction vs batched S-pair kernel\n");
    for (const auto& s : sizes) {
        std::vector<std::string> vars;
        for (int i = 0; i < s.vars; ++i) vars.push_back("x" + std::to_string(i));
        CtxPtr ctx = geometric_context(vars);
        double ts_total = 0, tp_total = 0;
        bool ok = true;
        for (int r = 0; r < s.reps; ++r) {
            std::vector<Poly> gens_list;
            for (int g = 0; g < s.gens; ++g) {
                Poly f = rnd_poly(ctx, k, gen, s.terms, s.deg, 6);
                if (!f.is_zero()) gens_list.push_back(f);
            }
            if (gens_list.empty()) continue;
            std::vector<Poly> gb_serial, gb_batched;
            ts_total += time_ms([&] { gb_serial = groebner_basis(gens_list); });
            tp_total += time_ms([&] { gb_batched = groebner_basis_batched(gens_list); });
            ok = ok && bases_match(gb_serial, gb_batched);
        }
        ++tally.ran;
        if (!ok) ++tally.mismatched;
        std::printf("  vars=%d gens=%d deg<=%d x%d  serial=%9.2fms  batched=%9.2fms  speedup=%4.2fx  %s\n",
                    s.vars, s.gens, s.deg, s.reps, ts_total, tp_total,
                    tp_total > 0 ? ts_total / tp_total : 0.0, ok ? "match" : "MISMATCH");
    }
}

}  // namespace

int main(int argc, char** argv) {
    bool quick = false;
    for (int i = 1; i < argc; ++i)
        if (std::string(argv[i]) == "--quick") quick = true;
#ifdef TK_HAVE_OPENMP
    std::printf("openmp enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("openmp disabled, threaded paths fall back to serial\n");
#endif
    Tally tally;
    bench_survey(quick, tally);
    bench_groebner(quick, tally);
    std::printf("%d comparisons, %d mismatches\n", tally.ran, tally.mismatched);
    return tally.mismatched == 0 ? 0 : 1;
}
