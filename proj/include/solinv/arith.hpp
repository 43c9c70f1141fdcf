/**
 * Exact scalar types and elementary number theory used throughout the
 * library. All arithmetic is arbitrary precision (GMP-backed); nothing
 * here ever touches floating point.
 */

#ifndef SOLINV_ARITH_HPP
#define SOLINV_ARITH_HPP

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace solinv {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

inline Int absInt(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcdInt(const Int& a, const Int& b)
{
    return boost::multiprecision::gcd(a, b);
}

inline Int lcmInt(const Int& a, const Int& b)
{
    return boost::multiprecision::lcm(a, b);
}

/**
 * Integer power with nonnegative exponent.
 */
inline Int ipow(const Int& base, unsigned exp)
{
    Int r = 1, b = base;
    unsigned e = exp;
    while (e > 0) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1u;
    }
    return r;
}

/**
 * Distinct prime divisors of |n|, ascending. Trial division; inputs in
 * this project are covering degrees, torsion orders and small determinants.
 *
 * |n| = 1 yields the empty list; n = 0 is rejected.
 */
inline std::vector<Int> primeFactors(const Int& n)
{
    if (n == 0) throw std::invalid_argument("primeFactors: zero has no prime factorization");
    Int m = absInt(n);
    std::vector<Int> primes;
    auto strip = [&](const Int& p) {
        if (m % p == 0) {
            primes.push_back(p);
            while (m % p == 0) m /= p;
        }
    };
    strip(2);
    strip(3);
    for (Int p = 5; p * p <= m; p += (p % 6 == 5 ? 2 : 4)) strip(p);
    if (m > 1) primes.push_back(m);
    return primes;
}

/** Product of the distinct prime divisors of |n| (the radical); 1 for |n| = 1. */
inline Int radical(const Int& n)
{
    Int r = 1;
    for (const Int& p : primeFactors(n)) r *= p;
    return r;
}

inline std::string toString(const Int& n) { return n.str(); }

} // namespace solinv

#endif
