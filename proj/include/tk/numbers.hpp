#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tk {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int gcd_int(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm_int(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }
inline Int abs_int(const Int& a) { return boost::multiprecision::abs(a); }
inline Int num_of(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int den_of(const Rat& q) { return boost::multiprecision::denominator(q); }

// residue in [0, n)
inline Int mod_reduce(const Int& a, const Int& n) {
    Int r = a % n;
    if (r < 0) r += n;
    return r;
}

Int pow_int(const Int& base, unsigned long exp);

// inverse of a modulo n; empty when gcd(a, n) != 1
std::optional<Int> mod_inverse(const Int& a, const Int& n);

bool is_prime(const Int& n);

// complete factorization by trial division (with a primality check on the
// cofactor); throws FactorizationFailure past the trial bound
std::vector<std::pair<Int, int>> factorize(const Int& n);

// p-adic valuation; a != 0
int valuation(const Int& a, const Int& p);
// valuation of a rational (may be negative); a != 0
int valuation(const Rat& a, const Int& p);

std::string int_str(const Int& a);
std::string rat_str(const Rat& q);

}  // namespace tk
