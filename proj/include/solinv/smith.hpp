/**
 * Smith normal form over Z with unimodular transforms, and the exact
 * solvers built on it (integer kernels, unimodular inverses, linear
 * congruence systems).
 */

#ifndef SOLINV_SMITH_HPP
#define SOLINV_SMITH_HPP

#include <vector>

#include "solinv/intmat.hpp"

namespace solinv {

/**
 * U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... with
 * zeros (if any) trailing and nonzero d_i >= 1. invariant_factors lists the
 * nonzero diagonal entries (ones included, zeros excluded).
 */
struct SmithForm {
    IntMat U;
    IntMat D;
    IntMat V;
    std::vector<Int> invariant_factors;
};

/**
 * Smith normal form by gcd-driven row/column reduction with pivot selection
 * by minimal absolute value. Deterministic: fixed input gives fixed output.
 */
SmithForm smithNormalForm(const IntMat& a);

/**
 * Basis of ker(A) ∩ Z^n as matrix columns. The basis spans a saturated
 * sublattice (it is the full integer kernel).
 */
IntMat kernelLattice(const IntMat& a);

/** Exact inverse of a unimodular integer matrix. Throws if |det| != 1. */
IntMat unimodularInverse(const IntMat& u);

/**
 * Solution of M y ≡ rhs, equation e taken modulo moduli[e] (modulus 0 means
 * an exact equation over Z).
 *
 * `unique` reports whether the solution is unique once unknown v is read
 * modulo unknown_moduli[v] (0 = unknown lives in Z): it holds iff every
 * homogeneous solution reduces to zero.
 */
struct CongruenceSolution {
    bool solvable = false;
    bool unique = false;
    IntVec particular;
};

CongruenceSolution solveLinearCongruences(const IntMat& m,
                                          const IntVec& rhs,
                                          const std::vector<Int>& moduli,
                                          const std::vector<Int>& unknown_moduli);

} // namespace solinv

#endif
