#include "solinv/smith.hpp"

#include <cassert>

namespace solinv {

namespace {

// smallest-|entry| pivot in the trailing submatrix; returns false if all zero
bool locatePivot(const IntMat& d, Index t, Index& pr, Index& pc)
{
    bool found = false;
    Int best = 0;
    for (Index i = t; i < d.rows(); ++i) {
        for (Index j = t; j < d.cols(); ++j) {
            if (d(i, j) == 0) continue;
            Int a = absInt(d(i, j));
            if (!found || a < best) {
                found = true;
                best = a;
                pr = i;
                pc = j;
            }
        }
    }
    return found;
}

bool crossClear(const IntMat& d, Index t)
{
    for (Index i = t + 1; i < d.rows(); ++i)
        if (d(i, t) != 0) return false;
    for (Index j = t + 1; j < d.cols(); ++j)
        if (d(t, j) != 0) return false;
    return true;
}

} // namespace

SmithForm smithNormalForm(const IntMat& a)
{
    const Index rows = a.rows(), cols = a.cols();
    SmithForm s;
    s.U = IntMat::Identity(rows, rows);
    s.V = IntMat::Identity(cols, cols);
    s.D = a;
    IntMat& d = s.D;

    const Index nmin = std::min(rows, cols);
    for (Index t = 0; t < nmin; ++t) {
        Index pr = t, pc = t;
        if (!locatePivot(d, t, pr, pc)) break; // trailing block is zero

        for (;;) {
            d.row(t).swap(d.row(pr));
            s.U.row(t).swap(s.U.row(pr));
            d.col(t).swap(d.col(pc));
            s.V.col(t).swap(s.V.col(pc));

            // Euclidean steps against the pivot
            for (Index i = t + 1; i < rows; ++i) {
                if (d(i, t) == 0) continue;
                Int q = d(i, t) / d(t, t);
                if (q != 0) {
                    d.row(i) -= q * d.row(t);
                    s.U.row(i) -= q * s.U.row(t);
                }
            }
            for (Index j = t + 1; j < cols; ++j) {
                if (d(t, j) == 0) continue;
                Int q = d(t, j) / d(t, t);
                if (q != 0) {
                    d.col(j) -= q * d.col(t);
                    s.V.col(j) -= q * s.V.col(t);
                }
            }

            if (!crossClear(d, t)) {
                locatePivot(d, t, pr, pc);
                continue;
            }

            // enforce the divisibility chain: fold a bad entry into the pivot row
            Index br = -1;
            for (Index i = t + 1; i < rows && br < 0; ++i)
                for (Index j = t + 1; j < cols; ++j)
                    if (d(i, j) % d(t, t) != 0) { br = i; break; }
            if (br < 0) break;
            d.row(t) += d.row(br);
            s.U.row(t) += s.U.row(br);
            locatePivot(d, t, pr, pc);
        }

        if (d(t, t) < 0) {
            d.row(t) = -d.row(t);
            s.U.row(t) = -s.U.row(t);
        }
    }

    for (Index t = 0; t < nmin; ++t)
        if (d(t, t) != 0) s.invariant_factors.push_back(d(t, t));
    return s;
}

IntMat kernelLattice(const IntMat& a)
{
    SmithForm s = smithNormalForm(a);
    const Index rank = static_cast<Index>(s.invariant_factors.size());
    // columns of V past the rank map to zero; they span the full integer kernel
    return s.V.rightCols(a.cols() - rank);
}

IntMat unimodularInverse(const IntMat& u)
{
    if (u.rows() != u.cols()) throw std::invalid_argument("unimodularInverse: matrix must be square");
    SmithForm s = smithNormalForm(u);
    for (const Int& f : s.invariant_factors)
        if (f != 1) throw std::invalid_argument("unimodularInverse: matrix is not unimodular");
    if (static_cast<Index>(s.invariant_factors.size()) != u.rows())
        throw std::invalid_argument("unimodularInverse: matrix is singular");
    // U u V = I  =>  u^-1 = V U
    return IntMat(s.V * s.U);
}

CongruenceSolution solveLinearCongruences(const IntMat& m,
                                          const IntVec& rhs,
                                          const std::vector<Int>& moduli,
                                          const std::vector<Int>& unknown_moduli)
{
    const Index eqs = m.rows(), unknowns = m.cols();
    if (rhs.size() != eqs || static_cast<Index>(moduli.size()) != eqs ||
        static_cast<Index>(unknown_moduli.size()) != unknowns)
        throw std::invalid_argument("solveLinearCongruences: dimension mismatch");

    // append one slack column per modular equation: M y + m_e z_e = rhs
    Index slack = 0;
    for (const Int& me : moduli)
        if (me != 0) ++slack;
    IntMat c = IntMat::Zero(eqs, unknowns + slack);
    c.leftCols(unknowns) = m;
    Index sc = unknowns;
    for (Index e = 0; e < eqs; ++e) {
        if (moduli[static_cast<size_t>(e)] != 0) c(e, sc++) = moduli[static_cast<size_t>(e)];
    }

    SmithForm s = smithNormalForm(c);
    const Index rank = static_cast<Index>(s.invariant_factors.size());
    IntVec t = IntVec(s.U * rhs);

    CongruenceSolution sol;
    IntVec yhat = IntVec::Zero(c.cols());
    for (Index i = 0; i < eqs; ++i) {
        if (i < rank) {
            if (t(i) % s.D(i, i) != 0) return sol; // unsolvable
            yhat(i) = t(i) / s.D(i, i);
        } else if (t(i) != 0) {
            return sol; // unsolvable
        }
    }
    sol.solvable = true;
    IntVec w = IntVec(s.V * yhat);
    sol.particular = w.head(unknowns);

    // uniqueness modulo the per-unknown moduli: every homogeneous generator
    // must reduce to zero
    sol.unique = true;
    for (Index j = rank; j < c.cols() && sol.unique; ++j) {
        for (Index v = 0; v < unknowns; ++v) {
            const Int& mu = unknown_moduli[static_cast<size_t>(v)];
            Int entry = s.V(v, j);
            if (mu == 0 ? entry != 0 : entry % mu != 0) {
                sol.unique = false;
                break;
            }
        }
    }
    return sol;
}

} // namespace solinv
