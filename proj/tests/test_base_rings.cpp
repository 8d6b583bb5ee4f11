#include <random>

#include "doctest.h"
#include "tk/numbers.hpp"
#include "tk/ring.hpp"

using namespace tk;

namespace {

// oracle: extended Euclid, returns (g, x, y) with a*x + b*y = g = gcd(a, b)
struct ExtGcd {
    Int g, x, y;
};
ExtGcd ext_gcd(Int a, Int b) {
    if (b == 0) return {a < 0 ? Int(-a) : a, a < 0 ? Int(-1) : Int(1), 0};
    ExtGcd r = ext_gcd(b, Int(a % b));
    return {r.g, r.y, Int(r.x - (a / b) * r.y)};
}

// oracle: primality by trial division
bool trial_prime(const Int& n) {
    if (n < 2) return false;
    for (Int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Elem rnd_elem(const RingPtr& R, std::mt19937_64& gen) {
    std::uniform_int_distribution<long> d(-50, 50);
    long a = d(gen);
    if (R->kind == RingKind::Rationals) {
        long b = d(gen);
        if (b == 0) b = 1;
        if (b < 0) a = -a, b = -b;  // Rat(n, d) wants d > 0
        return elem_rat(R, Rat(a, b));
    }
    if (R->kind == RingKind::LocalizedIntegers) {
        long b = d(gen);
        Int p = R->n;
        if (b == 0 || Int(b) % p == 0) b = 1;  // keep the denominator a unit
        if (b < 0) a = -a, b = -b;
        return elem_rat(R, Rat(a, b));
    }
    return elem_int(R, a);
}

}  // namespace

TEST_SUITE("base-rings") {

TEST_CASE("extended euclid oracle sanity") {
    auto r = ext_gcd(6, 9);
    CHECK(r.g == 3);                  // gcd(6,9)
    CHECK(6 * r.x + 9 * r.y == 3);    // Bezout
    r = ext_gcd(-4, 6);
    CHECK(r.g == 2);
    CHECK(-4 * r.x + 6 * r.y == 2);
    CHECK(ext_gcd(0, 0).g == 0);
}

TEST_CASE("valuation") {
    CHECK(valuation(Int(12), 2) == 2);   // 12 = 4*3
    CHECK(valuation(Int(12), 3) == 1);
    CHECK(valuation(Int(-8), 2) == 3);
    CHECK(valuation(Int(7), 2) == 0);
    CHECK(valuation(Rat(3, 8), 2) == -3);  // 3/8
    CHECK(valuation(Rat(9, 2), 3) == 2);
}

TEST_CASE("mod_inverse matches extended euclid") {
    std::mt19937_64 gen(101);
    std::uniform_int_distribution<long> d(1, 10000);
    int invertible = 0;
    for (int i = 0; i < 500; ++i) {
        Int a = d(gen), n = d(gen) + 1;
        auto inv = mod_inverse(a, n);
        ExtGcd e = ext_gcd(a, n);
        if (e.g == 1) {
            REQUIRE(inv.has_value());
            CHECK(mod_reduce(a * *inv, n) == mod_reduce(Int(1), n));
            ++invertible;
        } else {
            CHECK(!inv.has_value());
        }
    }
    CHECK(invertible > 100);  // the sample is not degenerate
}

TEST_CASE("is_prime agrees with trial division") {
    for (long n : {2, 3, 5, 7, 11, 97, 101}) CHECK(is_prime(Int(n)));
    for (long n : {1, 0, 4, 91, 561, 1105, 1729}) CHECK(!is_prime(Int(n)));  // Carmichael too
    std::mt19937_64 gen(7);
    std::uniform_int_distribution<long> d(2, 200000);
    for (int i = 0; i < 300; ++i) {
        Int n = d(gen);
        CHECK(is_prime(n) == trial_prime(n));
    }
}

TEST_CASE("factorize reassembles and yields primes") {
    std::mt19937_64 gen(13);
    std::uniform_int_distribution<long> d(2, 1000000);
    for (int i = 0; i < 200; ++i) {
        Int n = d(gen);
        Int prod = 1;
        for (auto& [p, e] : factorize(n)) {
            CHECK(trial_prime(p));
            prod *= pow_int(p, e);
        }
        CHECK(prod == n);
    }
}

TEST_CASE("F7 arithmetic") {
    RingPtr F7 = ring_Fp(7);
    Elem a = elem_int(F7, 3), b = elem_int(F7, 5);
    CHECK(eq(mul(a, b), elem_int(F7, 1)));          // 15 = 2*7 + 1
    CHECK(eq(inv(a), elem_int(F7, 5)));             // 3*5 = 1
    CHECK(eq(pow_elem(a, 6), elem_int(F7, 1)));     // Fermat
    CHECK(eq(add(a, neg(a)), ring_zero(F7)));
    CHECK(eq(sub(a, b), elem_int(F7, -2)));         // 3-5 = -2 = 5 mod 7
    CHECK(eq(sub(a, b), elem_int(F7, 5)));
}

TEST_CASE("Z/12 units and zero divisors") {
    RingPtr R = ring_Zmod(12);
    CHECK(is_unit(elem_int(R, 5)));
    CHECK(eq(inv(elem_int(R, 5)), elem_int(R, 5)));  // 25 = 24 + 1
    CHECK(!is_unit(elem_int(R, 4)));
    CHECK(is_zero(mul(elem_int(R, 4), elem_int(R, 3))));  // 4*3 = 12 = 0
    CHECK(!is_field(R));
    CHECK(characteristic(R) == 12);
}

TEST_CASE("Z_(5) localization") {
    RingPtr R = ring_Zloc(5);
    CHECK(is_unit(elem_rat(R, Rat(3, 7))));     // v_5 = 0
    CHECK(!is_unit(elem_int(R, 5)));            // v_5 = 1
    CHECK(!is_unit(elem_rat(R, Rat(10, 3))));
    CHECK(eq(inv(elem_rat(R, Rat(3, 7))), elem_rat(R, Rat(7, 3))));
    CHECK(eq(elem_rat(R, Rat(10, 4)), elem_rat(R, Rat(5, 2))));  // canonical form
    CHECK_THROWS_AS((void)elem_rat(R, Rat(1, 5)), Error);  // 1/5 is not in Z_(5)
    CHECK(characteristic(R) == 0);
}

TEST_CASE("ring axioms hold on random elements") {
    std::mt19937_64 gen(42);
    std::vector<RingPtr> rings = {ring_Z(), ring_Q(), ring_Fp(7), ring_Zmod(12), ring_Zloc(3)};
    for (const auto& R : rings) {
        for (int i = 0; i < 250; ++i) {
            Elem a = rnd_elem(R, gen), b = rnd_elem(R, gen), c = rnd_elem(R, gen);
            CHECK(eq(add(a, b), add(b, a)));
            CHECK(eq(mul(a, b), mul(b, a)));
            CHECK(eq(add(add(a, b), c), add(a, add(b, c))));
            CHECK(eq(mul(mul(a, b), c), mul(a, mul(b, c))));
            CHECK(eq(mul(a, add(b, c)), add(mul(a, b), mul(a, c))));
            CHECK(is_zero(add(a, neg(a))));
            CHECK(eq(mul(a, ring_one(R)), a));
            if (is_unit(a)) CHECK(eq(mul(a, inv(a)), ring_one(R)));
        }
    }
}

TEST_CASE("maximal ideal enumeration") {
    // Spm(Z/12): primes dividing 12
    auto ms = enumerate_maximal_ideals(ring_Zmod(12));
    REQUIRE(ms.size() == 2);
    CHECK(eq(ms[0].gen, elem_int(ring_Zmod(12), 2)));
    CHECK(eq(ms[1].gen, elem_int(ring_Zmod(12), 3)));
    CHECK(characteristic(ms[0].residue) == 2);
    CHECK(characteristic(ms[1].residue) == 3);
    // Spm(Z_(5)) has the single closed point (5)
    auto ml = enumerate_maximal_ideals(ring_Zloc(5));
    REQUIRE(ml.size() == 1);
    CHECK(characteristic(ml[0].residue) == 5);
    CHECK(is_field(ml[0].residue));
}

TEST_CASE("residue map is a ring homomorphism") {
    std::mt19937_64 gen(99);
    for (const auto& R : {ring_Zmod(12), ring_Zloc(5)}) {
        for (const auto& m : enumerate_maximal_ideals(R)) {
            for (int i = 0; i < 200; ++i) {
                Elem a = rnd_elem(R, gen), b = rnd_elem(R, gen);
                CHECK(eq(residue_map(add(a, b), m), add(residue_map(a, m), residue_map(b, m))));
                CHECK(eq(residue_map(mul(a, b), m), mul(residue_map(a, m), residue_map(b, m))));
            }
            CHECK(is_zero(residue_map(m.gen, m)));  // the generator dies
            CHECK(eq(residue_map(ring_one(R), m), ring_one(m.residue)));
        }
    }
}

TEST_CASE("pth root in prime residue fields") {
    RingPtr F5 = ring_Fp(5);
    for (long a = 0; a < 5; ++a) {
        Elem r = pth_root_residue(elem_int(F5, a));
        CHECK(eq(pow_elem(r, 5), elem_int(F5, a)));  // Frobenius is bijective
        CHECK(eq(r, elem_int(F5, a)));               // and the identity on F_p
    }
    CHECK(!elem_pth_root(elem_rat(ring_Q(), Rat(2))).has_value());  // char 0 has no p
}

TEST_CASE("field element enumeration") {
    auto f5 = field_elements(ring_Fp(5), 100);
    REQUIRE(f5.has_value());
    CHECK(f5->size() == 5);
    for (size_t i = 0; i < f5->size(); ++i)
        for (size_t j = i + 1; j < f5->size(); ++j) CHECK(!eq((*f5)[i], (*f5)[j]));
    CHECK(!field_elements(ring_Q(), 100).has_value());   // infinite
    CHECK(!field_elements(ring_Fp(5), 3).has_value());   // over the limit
}

TEST_CASE("lift then reduce is the identity on residues") {
    RingPtr R = ring_Zmod(12);
    auto ms = enumerate_maximal_ideals(R);
    std::mt19937_64 gen(5);
    for (const auto& m : ms)
        for (int i = 0; i < 100; ++i) {
            Elem abar = rnd_elem(m.residue, gen);
            Elem lifted = lift_elem(abar, R);
            CHECK(eq(residue_map(lifted, m), abar));
        }
}

}  // TEST_SUITE
