/**
 * Dense exact integer and rational matrices (Eigen, templated on the
 * arbitrary-precision scalars from arith.hpp) plus the exact linear
 * algebra kernels the rest of the library builds on: fraction-free
 * determinants, ranks, characteristic polynomials, rational solves,
 * Hermite bases and matrix parsing/formatting.
 */

#ifndef SOLINV_INTMAT_HPP
#define SOLINV_INTMAT_HPP

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "solinv/arith.hpp"

namespace solinv {

using IntMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using RatMat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;

using Eigen::Index;

inline bool isZeroMat(const IntMat& a)
{
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0) return false;
    return true;
}

inline IntMat diagMatrix(const std::vector<Int>& d)
{
    IntMat m = IntMat::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
    for (Index i = 0; i < m.rows(); ++i) m(i, i) = d[static_cast<size_t>(i)];
    return m;
}

inline IntMat hcat(const IntMat& a, const IntMat& b)
{
    IntMat m(a.rows(), a.cols() + b.cols());
    m.leftCols(a.cols()) = a;
    m.rightCols(b.cols()) = b;
    return m;
}

/** A^k by repeated squaring; A square, k >= 0 (k = 0 gives the identity). */
IntMat matPow(const IntMat& a, unsigned k);

/** Exact determinant (Bareiss fraction-free elimination). */
Int determinant(const IntMat& a);

/** Rank over Q, by exact elimination. */
int rankQ(const IntMat& a);

/**
 * Characteristic polynomial det(x I - A) by the Faddeev-LeVerrier
 * recursion (all divisions exact). Coefficients ascending: c[0] + c[1] x +
 * ... + c[n] x^n with c[n] = 1.
 */
std::vector<Int> charPoly(const IntMat& a);

/** Evaluate an (ascending-coefficient) integer polynomial at x. */
Int evalPoly(const std::vector<Int>& coeffs, const Int& x);

/**
 * Solve A X = B over the rationals for square A. Returns nullopt when A is
 * singular.
 */
std::optional<RatMat> solveRational(const IntMat& a, const IntMat& b);

bool isIntegral(const RatMat& m);
IntMat toIntegral(const RatMat& m);

/**
 * Canonical column-Hermite basis of the lattice spanned by the columns of
 * `cols`. Requires the lattice to have full rank (rows == rank); result is
 * square lower-triangular with positive diagonal and reduced off-diagonal
 * entries, so lattice equality is matrix equality.
 */
IntMat hermiteBasis(const IntMat& cols);

/** Matrix literals: "[[1,2],[3,4]]"; "[]" is the 0x0 matrix. */
IntMat parseMatrix(const std::string& text);
std::string formatMatrix(const IntMat& m);

} // namespace solinv

#endif
