/**
 * Independent brute-force verifiers: divisibility fingerprints for
 * stationary limits (membership of e_i/m in ∪_j A^-j Z^r decided by exact
 * arithmetic, torsion orders recovered by subgroup enumeration) and the
 * classical fixed-point count |det(A^k - I)| for torus endomorphisms.
 *
 * These deliberately avoid the canonicalization path in limits.hpp so the
 * two can be checked against each other.
 */

#ifndef SOLINV_ORACLE_HPP
#define SOLINV_ORACLE_HPP

#include <vector>

#include "solinv/limits.hpp"

namespace solinv {

struct DivisibilityWitness {
    int generator = 0;
    Int denominator = 1;
    bool member = false;
    int depth_found = -1; // smallest j <= depth with A^j e_i ≡ 0 (mod m), -1 if none
};

struct LimitFingerprint {
    int depth = 0;
    std::vector<Int> torsion_orders; // invariant factors of the image of α^depth on torsion
    std::vector<DivisibilityWitness> witnesses;
};

/**
 * Membership of e_i/m in ∪_{j<=depth} A^-j Z^r for every free generator i
 * and every denominator m, plus the torsion orders after depth iterations.
 * Membership is monotone in depth.
 */
LimitFingerprint fingerprintLimit(const StationarySystem& sys, int depth,
                                  const std::vector<Int>& denominators);

/**
 * Consistency of a canonical limit with a fingerprint: torsion orders must
 * agree; a prime in a summand's set must have a positive witness on the
 * matching generator (when the basis is aligned) and a prime outside all
 * sets must have no witness. Throws std::invalid_argument on Opaque limits.
 */
bool checkCanonicalAgainstFingerprint(const LimitGroup& l, const LimitFingerprint& fp);

/**
 * |det(A^k - I)|: the number of fixed points of the k-th iterate of the
 * torus endomorphism induced by A. Rejects non-expanding A.
 */
Int torusFixedPoints(const IntMat& a, unsigned k);

/** Default oracle denominators: primes <= 13 together with the primes dividing n. */
std::vector<Int> defaultDenominators(const Int& n);

} // namespace solinv

#endif
