#include "tk/cli.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tk/bertini.hpp"
#include "tk/guard.hpp"
#include "tk/numbers.hpp"
#include "tk/regularity.hpp"
#include "tk/sexpr.hpp"
#include "tk/transcend.hpp"

namespace tk {

namespace {

std::string at_pos(const SExpr& e) {
    return "input:" + std::to_string(e.line) + ":" + std::to_string(e.col) + ": ";
}

// ---------------------------------------------------------------- script env

struct ScriptEnv {
    std::map<std::string, RingPtr> rings;
    std::map<std::string, Poly> polys;
    std::map<std::string, ProjMorphism> morphisms;
    std::map<std::string, Hyperplane> hyperplanes;
    std::string last_ring, last_morphism, last_hyperplane;
    SExpr cmd;
    bool has_cmd = false;
};

Int lit_int(const SExpr& e) {
    if (e.kind != SExpr::Integer) fail(Err::SyntaxError, at_pos(e) + "expected an integer");
    return Int(e.lit);
}

Elem lit_elem(const RingPtr& R, const SExpr& e) {
    if (e.kind == SExpr::Integer) return elem_int(R, Int(e.lit));
    if (e.kind == SExpr::Rational) return elem_rat(R, Rat(e.lit));
    fail(Err::SyntaxError, at_pos(e) + "expected a numeric literal");
}

// ------------------------------------------------------ expression evaluator

struct FracPoly {
    Poly n, d;
};

FracPoly fp_const(const CtxPtr& ctx, const Elem& c) {
    return {poly_const(ctx, c), poly_const(ctx, ring_one(c.ring))};
}

FracPoly eval_expr(const SExpr& e, const CtxPtr& ctx, const RingPtr& R) {
    switch (e.kind) {
        case SExpr::Symbol:
            if (ctx->index_of(e.sym) >= 0)
                return {poly_var(ctx, R, e.sym), poly_const(ctx, ring_one(R))};
            fail(Err::UnknownIdentifier, at_pos(e) + "unknown symbol " + e.sym);
        case SExpr::Integer:
        case SExpr::Rational:
            return fp_const(ctx, lit_elem(R, e));
        case SExpr::List:
            break;
    }
    if (e.size() == 0 || e.at(0).kind != SExpr::Symbol)
        fail(Err::SyntaxError, at_pos(e) + "malformed expression");
    const std::string& op = e.at(0).sym;
    if (op == "+" || op == "*" || op == "-") {
        if (e.size() < 2) fail(Err::ArityError, at_pos(e) + op + " needs arguments");
        FracPoly acc = eval_expr(e.at(1), ctx, R);
        if (op == "-" && e.size() == 2) return {neg(acc.n), acc.d};
        for (size_t i = 2; i < e.size(); ++i) {
            FracPoly b = eval_expr(e.at(i), ctx, R);
            if (op == "*")
                acc = {mul(acc.n, b.n), mul(acc.d, b.d)};
            else {
                Poly cross = op == "+" ? add(mul(acc.n, b.d), mul(b.n, acc.d))
                                       : sub(mul(acc.n, b.d), mul(b.n, acc.d));
                acc = {cross, mul(acc.d, b.d)};
            }
        }
        return acc;
    }
    if (op == "^") {
        if (e.size() != 3) fail(Err::ArityError, at_pos(e) + "^ needs a base and an exponent");
        FracPoly a = eval_expr(e.at(1), ctx, R);
        Int k = lit_int(e.at(2));
        if (k < 0) fail(Err::SyntaxError, at_pos(e.at(2)) + "exponent must be nonnegative");
        unsigned ku = k.convert_to<unsigned>();
        return {pow_poly(a.n, ku), pow_poly(a.d, ku)};
    }
    if (op == "frac") {
        if (e.size() != 3) fail(Err::ArityError, at_pos(e) + "frac needs two arguments");
        FracPoly a = eval_expr(e.at(1), ctx, R);
        FracPoly b = eval_expr(e.at(2), ctx, R);
        if (b.n.is_zero()) fail(Err::DivisionByNonUnit, at_pos(e) + "division by zero");
        return {mul(a.n, b.d), mul(a.d, b.n)};
    }
    fail(Err::UnknownIdentifier, at_pos(e) + "unknown operator " + op);
}

Poly as_poly(const FracPoly& f) {
    if (!f.d.is_constant())
        fail(Err::Unsupported, "expression has a nonconstant denominator; polynomials only here");
    return mul_scalar(f.n, inv(f.d.constant_coeff()));
}

// ----------------------------------------------------------- ring descriptors

RingPtr ring_desc(const SExpr& e, const ScriptEnv& env) {
    if (e.kind == SExpr::Symbol) {
        if (e.sym == "Z") return ring_Z();
        if (e.sym == "Q") return ring_Q();
        auto it = env.rings.find(e.sym);
        if (it != env.rings.end()) return it->second;
        fail(Err::UnknownIdentifier, at_pos(e) + "unknown ring " + e.sym);
    }
    if (!e.is_list() || e.size() == 0 || e.at(0).kind != SExpr::Symbol)
        fail(Err::SyntaxError, at_pos(e) + "malformed ring descriptor");
    const std::string& h = e.at(0).sym;
    if (h == "ring") {  // descriptor spelled with the declaration keyword
        SExpr t = e;
        t.items.erase(t.items.begin());
        if (t.items.size() == 1) return ring_desc(t.items[0], env);
        return ring_desc(t, env);
    }
    if (h == "Z") return ring_Z();
    if (h == "Q") return ring_Q();
    if (h == "Fp") return ring_Fp(lit_int(e.at(1)));
    if (h == "Zmod") return ring_Zmod(lit_int(e.at(1)));
    if (h == "Zloc") return ring_Zloc(lit_int(e.at(1)));
    if (h == "Polyring" || h == "Transc") {
        RingPtr base = ring_desc(e.at(1), env);
        const SExpr& vs = e.at(2);
        if (!vs.is_list()) fail(Err::SyntaxError, at_pos(vs) + "expected a variable list");
        std::vector<std::string> vars;
        for (const auto& v : vs.items) {
            if (v.kind != SExpr::Symbol) fail(Err::SyntaxError, at_pos(v) + "expected a variable");
            vars.push_back(v.sym);
        }
        return h == "Polyring" ? ring_poly(base, vars) : ring_transc(base, vars);
    }
    if (h == "Quot") {
        RingPtr base = ring_desc(e.at(1), env);
        if (e.at(2).kind != SExpr::Symbol)
            fail(Err::SyntaxError, at_pos(e.at(2)) + "expected the quotient variable");
        const std::string& var = e.at(2).sym;
        CtxPtr vc = geometric_context({var});
        return ring_quot(base, var, as_poly(eval_expr(e.at(3), vc, base)));
    }
    fail(Err::UnknownIdentifier, at_pos(e) + "unknown ring kind " + h);
}

void collect_unknowns(const SExpr& e, const std::set<std::string>& known,
                      std::vector<std::string>& out, std::set<std::string>& seen) {
    if (e.kind == SExpr::Symbol) {
        if (!known.count(e.sym) && !seen.count(e.sym)) {
            seen.insert(e.sym);
            out.push_back(e.sym);
        }
        return;
    }
    if (e.is_list())
        for (size_t i = (e.size() > 0 && e.at(0).kind == SExpr::Symbol) ? 1 : 0; i < e.size(); ++i)
            collect_unknowns(e.items[i], known, out, seen);
}

// ----------------------------------------------------------------- declarations

RingPtr default_ring(const ScriptEnv& env, const SExpr& where) {
    if (env.last_ring.empty())
        fail(Err::UnknownIdentifier, at_pos(where) + "no ring declared yet");
    return env.rings.at(env.last_ring);
}

void decl_poly(ScriptEnv& env, const SExpr& e) {
    // (poly NAME (in v...) [(over RING)] EXPR)
    if (e.size() < 4 || e.at(1).kind != SExpr::Symbol)
        fail(Err::ArityError, at_pos(e) + "poly needs a name, a variable list, and a body");
    const std::string& name = e.at(1).sym;
    const SExpr& inlist = e.at(2);
    if (!inlist.is_list() || inlist.size() == 0 || !inlist.at(0).is_sym("in"))
        fail(Err::SyntaxError, at_pos(inlist) + "expected (in v1 v2 ...)");
    std::vector<std::string> vars;
    for (size_t i = 1; i < inlist.size(); ++i) {
        if (inlist.at(i).kind != SExpr::Symbol)
            fail(Err::SyntaxError, at_pos(inlist.at(i)) + "expected a variable");
        vars.push_back(inlist.at(i).sym);
    }
    RingPtr R;
    size_t body_at = 3;
    if (e.at(3).is_list() && e.at(3).size() == 2 && e.at(3).at(0).is_sym("over")) {
        R = ring_desc(e.at(3).at(1), env);
        body_at = 4;
    } else {
        R = default_ring(env, e);
    }
    const SExpr& body = e.at(body_at);
    // unknown body symbols become parameters of a trailing t-block
    std::set<std::string> known(vars.begin(), vars.end());
    std::vector<std::string> params;
    std::set<std::string> seen;
    collect_unknowns(body, known, params, seen);
    std::vector<VarGroup> groups;
    if (!vars.empty()) groups.push_back({"x", Block::Geometric, vars});
    if (!params.empty()) groups.push_back({"t", Block::Parameter, params});
    if (groups.empty()) fail(Err::SyntaxError, at_pos(e) + "poly needs at least one variable");
    CtxPtr ctx = make_context(groups);
    env.polys.insert_or_assign(name, as_poly(eval_expr(body, ctx, R)));
}

Poly resolve_poly(const ScriptEnv& env, const SExpr& e, const CtxPtr& ctx, const RingPtr& R) {
    if (e.kind == SExpr::Symbol) {
        auto it = env.polys.find(e.sym);
        if (it != env.polys.end()) {
            if (!ring_eq(it->second.coeff, R))
                fail(Err::DomainIncompatible, at_pos(e) + e.sym + " is over a different ring");
            return substitute(it->second, {}, ctx);  // transport by variable name
        }
        if (ctx->index_of(e.sym) >= 0) return poly_var(ctx, R, e.sym);
        fail(Err::UnknownIdentifier, at_pos(e) + "unknown polynomial " + e.sym);
    }
    return as_poly(eval_expr(e, ctx, R));
}

void decl_morphism(ScriptEnv& env, const SExpr& e) {
    // (morphism NAME [(over RING)] (source (LBL v...)+) [(ideal ...)] (forms ...) [(proper)])
    if (e.size() < 3 || e.at(1).kind != SExpr::Symbol)
        fail(Err::ArityError, at_pos(e) + "morphism needs a name and clauses");
    const std::string& name = e.at(1).sym;
    RingPtr R;
    std::vector<VarGroup> groups;
    std::vector<const SExpr*> ideal_items, form_items;
    bool proper = false;
    for (size_t i = 2; i < e.size(); ++i) {
        const SExpr& c = e.at(i);
        if (!c.is_list() || c.size() == 0 || c.at(0).kind != SExpr::Symbol)
            fail(Err::SyntaxError, at_pos(c) + "expected a morphism clause");
        const std::string& h = c.at(0).sym;
        if (h == "over") {
            R = ring_desc(c.at(1), env);
        } else if (h == "source") {
            for (size_t g = 1; g < c.size(); ++g) {
                const SExpr& ge = c.at(g);
                if (!ge.is_list() || ge.size() < 2 || ge.at(0).kind != SExpr::Symbol)
                    fail(Err::SyntaxError, at_pos(ge) + "expected (label v1 v2 ...)");
                VarGroup vg{ge.at(0).sym, Block::Geometric, {}};
                for (size_t v = 1; v < ge.size(); ++v) {
                    if (ge.at(v).kind != SExpr::Symbol)
                        fail(Err::SyntaxError, at_pos(ge.at(v)) + "expected a variable");
                    vg.vars.push_back(ge.at(v).sym);
                }
                groups.push_back(std::move(vg));
            }
        } else if (h == "ideal") {
            for (size_t k = 1; k < c.size(); ++k) ideal_items.push_back(&c.at(k));
        } else if (h == "forms") {
            for (size_t k = 1; k < c.size(); ++k) form_items.push_back(&c.at(k));
        } else if (h == "proper") {
            proper = true;
        } else {
            fail(Err::SyntaxError, at_pos(c) + "unknown morphism clause " + h);
        }
    }
    if (groups.empty()) fail(Err::SyntaxError, at_pos(e) + "morphism needs a source clause");
    if (form_items.empty()) fail(Err::SyntaxError, at_pos(e) + "morphism needs a forms clause");
    if (!R) R = default_ring(env, e);
    CtxPtr ctx = make_context(groups);
    std::vector<Poly> ideal, forms;
    for (const SExpr* it : ideal_items) ideal.push_back(resolve_poly(env, *it, ctx, R));
    for (const SExpr* it : form_items) forms.push_back(resolve_poly(env, *it, ctx, R));
    env.morphisms.insert_or_assign(name, make_morphism(R, ctx, ideal, forms, proper));
    env.last_morphism = name;
}

void decl_hyperplane(ScriptEnv& env, const SExpr& e) {
    // (hyperplane NAME [(over RING)] c0 c1 ...)
    if (e.size() < 3 || e.at(1).kind != SExpr::Symbol)
        fail(Err::ArityError, at_pos(e) + "hyperplane needs a name and coefficients");
    const std::string& name = e.at(1).sym;
    RingPtr R;
    size_t first = 2;
    if (e.at(2).is_list() && e.at(2).size() == 2 && e.at(2).at(0).is_sym("over")) {
        R = ring_desc(e.at(2).at(1), env);
        first = 3;
    } else {
        R = default_ring(env, e);
    }
    std::vector<Elem> coeffs;
    for (size_t i = first; i < e.size(); ++i) coeffs.push_back(lit_elem(R, e.at(i)));
    env.hyperplanes.insert_or_assign(name, make_hyperplane(std::move(coeffs)));
    env.last_hyperplane = name;
}

ScriptEnv load_script(const std::string& text) {
    std::vector<SExpr> forms = parse_sexprs(text);
    if (forms.empty()) fail(Err::SyntaxError, "empty input");
    ScriptEnv env;
    for (const SExpr& e : forms) {
        if (!e.is_list() || e.size() == 0 || e.at(0).kind != SExpr::Symbol)
            fail(Err::SyntaxError, at_pos(e) + "expected a declaration");
        const std::string& h = e.at(0).sym;
        if (h == "ring") {
            if (e.size() != 3 || e.at(1).kind != SExpr::Symbol)
                fail(Err::ArityError, at_pos(e) + "expected (ring NAME DESCRIPTOR)");
            env.rings.insert_or_assign(e.at(1).sym, ring_desc(e.at(2), env));
            env.last_ring = e.at(1).sym;
        } else if (h == "poly") {
            decl_poly(env, e);
        } else if (h == "morphism") {
            decl_morphism(env, e);
        } else if (h == "hyperplane") {
            decl_hyperplane(env, e);
        } else if (h == "cmd") {
            if (env.has_cmd) fail(Err::SyntaxError, at_pos(e) + "one command per invocation");
            if (e.size() < 2 || e.at(1).kind != SExpr::Symbol)
                fail(Err::ArityError, at_pos(e) + "expected (cmd NAME args...)");
            env.cmd = e;
            env.has_cmd = true;
        } else {
            fail(Err::SyntaxError, at_pos(e) + "unknown declaration " + h);
        }
    }
    return env;
}

// ------------------------------------------------------------------ dispatch

struct CmdArgs {
    std::string morphism, hyperplane;
    std::vector<unsigned> d;
};

CmdArgs script_args(const ScriptEnv& env, const std::string& command) {
    CmdArgs args;
    if (!env.has_cmd) return args;
    if (env.cmd.at(1).sym != command)
        fail(Err::BadParameters, "script declares command " + env.cmd.at(1).sym + " but " +
                                     command + " was invoked");
    for (size_t i = 2; i < env.cmd.size(); ++i) {
        const SExpr& a = env.cmd.at(i);
        if (a.kind == SExpr::Symbol) {
            if (env.morphisms.count(a.sym))
                args.morphism = a.sym;
            else if (env.hyperplanes.count(a.sym))
                args.hyperplane = a.sym;
            else
                fail(Err::UnknownIdentifier, at_pos(a) + "unknown name " + a.sym);
        } else if (a.is_list() && a.size() >= 2 && a.at(0).is_sym("d")) {
            for (size_t k = 1; k < a.size(); ++k) {
                Int v = lit_int(a.at(k));
                if (v <= 0) fail(Err::BadParameters, at_pos(a) + "d entries must be positive");
                args.d.push_back(v.convert_to<unsigned>());
            }
        } else {
            fail(Err::SyntaxError, at_pos(a) + "unexpected command argument");
        }
    }
    return args;
}

const ProjMorphism& pick_morphism(const ScriptEnv& env, const CmdArgs& args) {
    const std::string& name = args.morphism.empty() ? env.last_morphism : args.morphism;
    if (name.empty()) fail(Err::BadParameters, "the script declares no morphism");
    return env.morphisms.at(name);
}

const Hyperplane& pick_hyperplane(const ScriptEnv& env, const CmdArgs& args) {
    const std::string& name = args.hyperplane.empty() ? env.last_hyperplane : args.hyperplane;
    if (name.empty()) fail(Err::BadParameters, "the script declares no hyperplane");
    return env.hyperplanes.at(name);
}

void print_report(std::ostream& out, const RegularityReport& r) {
    out << "verdict: " << verdict_name(r.verdict) << "\n";
    out << "verified: " << (r.verified ? "true" : "false") << "\n";
    if (!r.witness.empty()) {
        out << "witness: (";
        for (size_t i = 0; i < r.witness.size(); ++i)
            out << (i ? ", " : "") << poly_str(r.witness[i]);
        out << ")\n";
    }
    for (const auto& e : r.evidence) out << "evidence: " << e << "\n";
}

// builds F_q for a prime power q; degree <= 3 extensions via a no-root modulus
RingPtr field_of_size(long q) {
    auto fac = factorize(Int(q));
    if (fac.size() != 1) fail(Err::BadParameters, "field size must be a prime power");
    Int p = fac[0].first;
    int e = fac[0].second;
    if (e == 1) return ring_Fp(p);
    if (e > 3) fail(Err::Unsupported, "field sizes p^e with e > 3 are not supported");
    RingPtr Fp = ring_Fp(p);
    CtxPtr zc = geometric_context({"z"});
    Poly zz = poly_var(zc, Fp, "z");
    std::vector<Elem> cs = *field_elements(Fp, 1u << 16);
    auto no_root = [&](const Poly& f) {
        for (const auto& r : cs)
            if (is_zero(substitute_scalars(f, {{"z", r}}).constant_coeff())) return false;
        return true;
    };
    std::vector<size_t> idx(e, 0);  // idx[j] = coefficient of z^j
    size_t m = cs.size();
    while (true) {
        Poly f = pow_poly(zz, (unsigned)e);
        for (int j = 0; j < e; ++j) f = add(f, mul_scalar(pow_poly(zz, (unsigned)j), cs[idx[j]]));
        if (no_root(f)) {
            RingPtr K = ring_quot(Fp, "z", f);
            if (K->modulus_irreducible) return K;
        }
        int j = 0;
        while (j < e && ++idx[j] == m) idx[j++] = 0;
        if (j == e) break;
    }
    fail(Err::FactorizationFailure, "no irreducible modulus of degree " + std::to_string(e));
}

ProjMorphism survey_family(const ProjMorphism& phi, long q) {
    if (q == 0) return phi;
    RingPtr K = field_of_size(q);
    if (ring_eq(K, phi.base)) return phi;
    if (phi.base->kind != RingKind::PrimeField || characteristic(K) != phi.base->n)
        fail(Err::BadParameters, "--field-size must name a power of the declared prime field");
    auto lift = [&](const Poly& f) {
        std::vector<Term> ts;
        for (const auto& t : f.t) ts.push_back({t.m, elem_int(K, t.c.z)});
        return poly_make(f.ctx, K, std::move(ts));
    };
    std::vector<Poly> ideal2, forms2;
    for (const auto& f : phi.x_ideal) ideal2.push_back(lift(f));
    for (const auto& f : phi.forms) forms2.push_back(lift(f));
    return make_morphism(K, phi.ctx, ideal2, forms2, phi.proper_flag);
}

int dispatch(const ScriptEnv& env, const CliOptions& opt, std::ostream& out) {
    CmdArgs args = script_args(env, opt.command);
    const std::string& cmd = opt.command;
    if (cmd == "generic-member") {
        GenericMember g = generic_member(pick_morphism(env, args), opt.chart);
        out << "command: generic-member\n";
        out << "extension: " << g.extension->name() << "\n";
        out << "chart: " << g.chart << "\n";
        out << "equation: " << poly_str(g.equation) << "\n";
        for (const auto& gg : g.ideal_x) out << "ideal: " << poly_str(gg) << "\n";
        return 0;
    }
    if (cmd == "member-at") {
        const ProjMorphism& phi = pick_morphism(env, args);
        const Hyperplane& H = pick_hyperplane(env, args);
        std::vector<Poly> gens = member_at(phi, H);
        out << "command: member-at\n";
        out << "coefficients: (";
        for (size_t i = 0; i < H.a.size(); ++i) out << (i ? ", " : "") << elem_str(H.a[i]);
        out << ")\n";
        for (const auto& g : gens) out << "generator: " << poly_str(g) << "\n";
        return 0;
    }
    if (cmd == "chart") {
        ChartReport c = chart_decompose(pick_morphism(env, args), opt.chart);
        out << "command: chart\n";
        out << "presentation: " << c.presentation << "\n";
        out << "chart: " << c.eliminated_index << "\n";
        out << "normalized: " << c.normal_index << "\n";
        out << "parameter: " << c.eliminated_param << " = (frac " << poly_str(c.num) << " "
            << poly_str(c.den) << ")\n";
        out << "graph: " << c.eliminated_dual << " = (frac " << poly_str(c.graph_num) << " "
            << poly_str(c.graph_den) << ")\n";
        out << "free:";
        for (const auto& t : c.free_params) out << " " << t;
        out << "\n";
        return 0;
    }
    if (cmd == "specialize") {
        GenericMember g = generic_member(pick_morphism(env, args), opt.chart);
        std::vector<unsigned> d = args.d;
        if (d.empty())
            for (size_t i = 1; i < g.phi.forms.size(); ++i) d.push_back((unsigned)i);
        SpecializedMember s = specialize_lambda(g, d);
        out << "command: specialize\n";
        out << "extension: " << s.extension->name() << "\n";
        out << "d: (";
        for (size_t i = 0; i < d.size(); ++i) out << (i ? ", " : "") << d[i];
        out << ")\n";
        out << "equation: " << poly_str(s.equation) << "\n";
        return 0;
    }
    if (cmd == "check-smooth") {
        const ProjMorphism& phi = pick_morphism(env, args);
        std::vector<Int> primes;
        if (opt.prime > 0) primes.push_back(Int(opt.prime));
        RegularityReport r =
            fiberwise_smooth(phi.base, phi.ctx, phi.x_ideal, phi.proper_flag, primes);
        out << "command: check-smooth\n";
        print_report(out, r);
        bool positive =
            r.verdict == Verdict::SmoothOverField || r.verdict == Verdict::RegularCertified;
        return (opt.assert_mode && !positive) ? 1 : 0;
    }
    if (cmd == "check-regular") {
        RegularityReport r = certify_generic_regular(pick_morphism(env, args));
        out << "command: check-regular\n";
        print_report(out, r);
        return (opt.assert_mode && r.verdict != Verdict::RegularCertified) ? 1 : 0;
    }
    if (cmd == "survey") {
        ProjMorphism fam = survey_family(pick_morphism(env, args), opt.field_size);
        SurveyTable t = member_survey(fam, true);
        out << "command: survey\n";
        out << "field: " << fam.base->name() << "\n";
        out << "rows: " << t.rows.size() << "\n";
        for (const auto& r : t.rows) {
            out << "row: (";
            for (size_t i = 0; i < r.coeffs.size(); ++i)
                out << (i ? ", " : "") << elem_str(r.coeffs[i]);
            out << ") " << r.cls << " | " << r.evidence << "\n";
        }
        out << "smooth: " << t.smooth << "\n";
        out << "singular-reduced: " << t.singular_reduced << "\n";
        out << "non-reduced: " << t.non_reduced << "\n";
        return (opt.assert_mode && t.smooth != t.rows.size()) ? 1 : 0;
    }
    if (cmd == "mixed-witness") {
        const ProjMorphism& phi = pick_morphism(env, args);
        if (opt.prime > 0 && phi.base->kind == RingKind::LocalizedIntegers &&
            phi.base->n != Int(opt.prime))
            fail(Err::BadParameters, "--prime disagrees with the declared base");
        RegularityReport r = mixedchar_witness(phi, pick_hyperplane(env, args));
        out << "command: mixed-witness\n";
        print_report(out, r);
        return opt.assert_mode ? 1 : 0;  // NotRegular is a negative verdict
    }
    fail(Err::Unsupported, "unknown command " + cmd);
}

// --------------------------------------------------------------- verify-paper

struct ExampleFail : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
    if (!ok) throw ExampleFail(what);
}

ProjMorphism frobenius(const RingPtr& k, int n, unsigned p) {
    std::vector<std::string> vars;
    for (int i = 0; i <= n; ++i) vars.push_back("x" + std::to_string(i));
    CtxPtr c = geometric_context(vars);
    std::vector<Poly> forms;
    for (const auto& v : vars) forms.push_back(pow_poly(poly_var(c, k, v), p));
    return make_morphism(k, c, {}, forms);
}

ProjMorphism mixed_family(const Int& p) {
    RingPtr R = ring_Zloc(p);
    CtxPtr c = make_context({VarGroup{"x", Block::Geometric, {"x0", "x1", "x2"}},
                             VarGroup{"y", Block::Geometric, {"y0", "y1", "y2"}}});
    unsigned pe = p.convert_to<unsigned>();
    Poly fam = poly_const(c, elem_int(R, 0));
    std::vector<Poly> forms;
    for (int i = 0; i < 3; ++i) {
        Poly xi = poly_var(c, R, "x" + std::to_string(i));
        fam = add(fam, mul(xi, pow_poly(poly_var(c, R, "y" + std::to_string(i)), pe)));
        forms.push_back(xi);
    }
    return make_morphism(R, c, {fam}, forms, true);
}

struct Example {
    std::string name;
    std::function<void()> run;
};

std::vector<Example> catalog() {
    std::vector<Example> ex;
    ex.push_back({"frobenius-generic-equation", [] {
        for (unsigned p : {2u, 3u, 5u}) {
            GenericMember g = generic_member(frobenius(ring_Fp(p), 2, p), 0);
            std::string ps = std::to_string(p);
            std::string want = "(+ (^ x0 " + ps + ") (* t1 (^ x1 " + ps + ")) (* t2 (^ x2 " + ps + ")))";
            expect(poly_str(g.equation) == want, "equation mismatch at p=" + ps);
            expect(g.extension->name() == "F" + ps + "(t1,t2)", "extension name mismatch");
        }
    }});
    ex.push_back({"frobenius-survey-f2", [] {
        SurveyTable t2 = member_survey(frobenius(ring_Fp(2), 2, 2));
        expect(t2.rows.size() == 7 && t2.non_reduced == 7, "P^2/F2: want 7 rows, all non-reduced");
        SurveyTable t1 = member_survey(frobenius(ring_Fp(2), 1, 2));
        expect(t1.rows.size() == 3 && t1.non_reduced == 3, "P^1/F2: want 3 rows, all non-reduced");
    }});
    ex.push_back({"frobenius-survey-f3", [] {
        SurveyTable t2 = member_survey(frobenius(ring_Fp(3), 2, 3));
        expect(t2.rows.size() == 13 && t2.non_reduced == 13, "P^2/F3: want 13 rows, all non-reduced");
        SurveyTable t1 = member_survey(frobenius(ring_Fp(3), 1, 3));
        expect(t1.rows.size() == 4 && t1.non_reduced == 4, "P^1/F3: want 4 rows, all non-reduced");
    }});
    ex.push_back({"generic-member-reduced", [] {
        GenericMember g = generic_member(frobenius(ring_Fp(2), 2, 2), 0);
        RegularityReport r = reducedness_check(collapse_equation(g));
        expect(r.verdict == Verdict::Reduced && r.verified, "generic Frobenius member not Reduced");
    }});
    ex.push_back({"generic-member-regular", [] {
        RegularityReport r = certify_generic_regular(frobenius(ring_Fp(2), 2, 2));
        expect(r.verdict == Verdict::RegularCertified, "generic Frobenius member not certified");
    }});
    ex.push_back({"mixed-family-regular", [] {
        for (int p : {2, 3}) {
            ProjMorphism phi = mixed_family(p);
            RegularityReport r =
                fiberwise_smooth(phi.base, phi.ctx, phi.x_ideal, phi.proper_flag);
            expect(r.verdict == Verdict::RegularCertified, "family not certified at p=" +
                                                               std::to_string(p));
        }
    }});
    ex.push_back({"mixed-char-witness", [] {
        ProjMorphism phi = mixed_family(2);
        RingPtr R = phi.base;
        Hyperplane H = make_hyperplane({elem_int(R, -1), elem_int(R, 1), elem_int(R, 0)});
        RegularityReport r = mixedchar_witness(phi, H);
        expect(r.verdict == Verdict::NotRegular && r.verified, "witness not verified");
        expect(poly_str(r.witness[1]) == "x1" && poly_str(r.witness[2]) == "(+ y1 1)" &&
                   poly_str(r.witness[3]) == "y2",
               "witness ideal mismatch");
    }});
    ex.push_back({"localization-witness", [] {
        for (const RingPtr& k : {ring_Fp(2), ring_Q()}) {
            RingPtr B = ring_poly(k, {"x", "y"});
            CtxPtr tc = parameter_context({"t"});
            Elem xe = elem_poly(B, poly_var(B->payload_ctx, k, "x"));
            Elem ye = elem_poly(B, poly_var(B->payload_ctx, k, "y"));
            Poly f = add(mul_scalar(poly_var(tc, B, "t"), ye), poly_const(tc, xe));
            expect(!is_admissible_denominator(f), "y*t+x admissible over " + B->name());
        }
        RingPtr K = ring_transc(ring_Q(), {"x", "y"});
        CtxPtr tc = parameter_context({"t"});
        CtxPtr pc = K->payload_ctx;
        Poly one = poly_const(pc, elem_int(ring_Q(), 1));
        Elem xe = elem_frac(K, poly_var(pc, ring_Q(), "x"), one);
        Elem ye = elem_frac(K, poly_var(pc, ring_Q(), "y"), one);
        Poly f = add(mul_scalar(poly_var(tc, K, "t"), ye), poly_const(tc, xe));
        expect(is_admissible_denominator(f), "y*t+x not admissible over Q(x,y)");
    }});
    ex.push_back({"residue-lift-roundtrip", [] {
        RingPtr Z = ring_Z(), Z6 = ring_Zmod(6);
        RingPtr extZ = ring_transc(Z, {"t"});
        RingPtr ext6 = ring_transc(Z6, {"t"});
        CtxPtr tc = extZ->payload_ctx;
        Poly fbar = add(mul_scalar(poly_var(tc, Z6, "t"), elem_int(Z6, 2)),
                        poly_const(tc, elem_int(Z6, 1)));
        Poly lift = lift_from_quotient(fbar, Z, {elem_int(Z, 6)});
        expect(is_admissible_denominator(lift), "lift is not admissible");
        ResidueImage im = reduce_mod_ideal(
            elem_frac(extZ, lift, poly_const(tc, elem_int(Z, 1))), {elem_int(Z, 6)});
        Elem want = elem_frac(ext6, fbar, poly_const(tc, elem_int(Z6, 1)));
        expect(ring_eq(im.ring, ext6) && eq(im.value, want), "round trip broke 2t+1 over Z/6");
    }});
    ex.push_back({"content-peel", [] {
        RingPtr Z = ring_Z();
        CtxPtr tc = parameter_context({"t"});
        Poly h = add(mul_scalar(poly_var(tc, Z, "t"), elem_int(Z, 6)),
                     poly_const(tc, elem_int(Z, 9)));
        auto [a, g] = content_peel(h);
        Poly want = add(mul_scalar(poly_var(tc, Z, "t"), elem_int(Z, 2)),
                        poly_const(tc, elem_int(Z, 3)));
        expect(eq(a, elem_int(Z, 3)) && poly_eq(g, want), "6t+9 != 3*(2t+3)");
    }});
    ex.push_back({"curry-roundtrip", [] {
        RingPtr Z = ring_Z();
        RingPtr ext = ring_transc(Z, {"t1", "t2"});
        CtxPtr tc = ext->payload_ctx;
        Poly num = add(mul(poly_var(tc, Z, "t1"), poly_var(tc, Z, "t2")),
                       poly_const(tc, elem_int(Z, 1)));
        Poly den = add(mul_scalar(poly_var(tc, Z, "t1"), elem_int(Z, 2)),
                       poly_const(tc, elem_int(Z, 3)));
        Elem a = elem_frac(ext, num, den);
        Elem b = uncurry(curry(a));
        expect(eq(a, b), "uncurry(curry(a)) != a");
    }});
    ex.push_back({"specialize-family", [] {
        GenericMember g = generic_member(frobenius(ring_Fp(2), 2, 2), 0);
        SpecializedMember s = specialize_lambda(g, {1, 2});
        std::string want =
            "(+ (^ x0 2) (* u0 (^ x1 2)) (* u1 (^ x1 2)) (* (^ u0 2) (^ x2 2)) (* u2 (^ x2 2)))";
        expect(poly_str(s.equation) == want, "specialized equation mismatch");
    }});
    ex.push_back({"chart-elimination", [] {
        RingPtr Q = ring_Q();
        CtxPtr c = geometric_context({"x0", "x1", "x2"});
        ProjMorphism id2 = make_morphism(
            Q, c, {}, {poly_var(c, Q, "x0"), poly_var(c, Q, "x1"), poly_var(c, Q, "x2")});
        ChartReport r = chart_decompose(id2, 0);
        expect(r.normal_index == 2, "normalized slot should be the last");
        expect(r.free_params == std::vector<std::string>{"t1"}, "free parameters mismatch");
        const CtxPtr& cc = r.num.ctx;
        Poly want_num = neg(add(mul(poly_var(cc, Q, "t1"), poly_var(cc, Q, "x1")),
                                poly_var(cc, Q, "x2")));
        expect(poly_eq(r.num, want_num), "eliminated parameter numerator mismatch");
        expect(r.den.is_constant() && eq(r.den.constant_coeff(), elem_int(Q, 1)),
               "denominator should dehomogenize to 1");
        const CtxPtr& pc = r.graph_num.ctx;
        Poly want_gnum = neg(add(mul(poly_var(pc, Q, "s1"), poly_var(pc, Q, "x1")),
                                 mul(poly_var(pc, Q, "s2"), poly_var(pc, Q, "x2"))));
        expect(poly_eq(r.graph_num, want_gnum) && poly_eq(r.graph_den, poly_var(pc, Q, "x0")),
               "universal graph mismatch");
        expect(r.presentation.find("S^{-1}") != std::string::npos, "presentation missing S^{-1}");
    }});
    ex.push_back({"generic-avoidance", [] {
        RingPtr Q = ring_Q();
        CtxPtr c = geometric_context({"x0", "x1"});
        ProjMorphism id1 = make_morphism(Q, c, {}, {poly_var(c, Q, "x0"), poly_var(c, Q, "x1")});
        expect(avoidance_check(id1, {poly_var(c, Q, "x0")}), "generic member meets V(x0)");
        expect(avoidance_check(id1, {poly_const(c, elem_int(Q, 1))}), "unit ideal not vacuous");
    }});
    return ex;
}

int run_verify(std::ostream& out) {
    out << "command: verify-paper\n";
    auto examples = catalog();
    size_t pass = 0;
    for (const auto& e : examples) {
        try {
            e.run();
            out << "example " << e.name << ": PASS\n";
            ++pass;
        } catch (const std::exception& ex2) {
            out << "example " << e.name << ": FAIL (" << ex2.what() << ")\n";
        }
    }
    out << "passed: " << pass << "/" << examples.size() << "\n";
    return pass == examples.size() ? 0 : 1;
}

}  // namespace

int run_cli(const CliOptions& opt, std::ostream& out, std::ostream& err) {
    try {
        if (opt.max_degree > 0) guard::set_max_degree((unsigned)opt.max_degree);
        if (opt.command.empty()) fail(Err::BadParameters, "no command given");
        if (opt.command == "verify-paper") return run_verify(out);
        if (opt.input.empty())
            fail(Err::BadParameters, "--input FILE is required for " + opt.command);
        std::ifstream in(opt.input);
        if (!in) fail(Err::BadParameters, "cannot open " + opt.input);
        std::stringstream ss;
        ss << in.rdbuf();
        ScriptEnv env = load_script(ss.str());
        return dispatch(env, opt, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace tk
