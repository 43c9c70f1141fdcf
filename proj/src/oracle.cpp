#include "solinv/oracle.hpp"

#include <algorithm>
#include <set>

#include "solinv/endo.hpp"

namespace solinv {

namespace {

// invariant factors of a finite abelian group given as an explicit element
// set inside ⊕ Z/t_i, recovered from the order-p^j element counts
std::vector<Int> factorsFromElements(const std::set<std::vector<Int>>& elements,
                                     const std::vector<Int>& orders)
{
    const size_t card = elements.size();
    if (card <= 1) return {};

    std::vector<Int> primes = primeFactors(Int(card));
    // per prime: partition of exponents (descending), from counts of
    // elements killed by p^j
    std::vector<std::vector<int>> partitions;
    for (const Int& p : primes) {
        std::vector<int> columnCounts; // #{i : λ_i >= j} for j = 1, 2, ...
        size_t prev = 1;
        Int pj = p;
        for (;;) {
            size_t nj = 0;
            for (const auto& x : elements) {
                bool killed = true;
                for (size_t c = 0; c < x.size(); ++c) {
                    if ((pj * x[c]) % orders[c] != 0) { killed = false; break; }
                }
                if (killed) ++nj;
            }
            if (nj == prev) break;
            // log_p of the count ratio
            size_t ratio = nj / prev;
            int log = 0;
            Int pw = 1;
            while (pw < Int(ratio)) { pw *= p; ++log; }
            columnCounts.push_back(log);
            prev = nj;
            pj *= p;
        }
        // conjugate partition: λ_i = #{j : columnCounts[j] >= i}
        std::vector<int> lambda;
        for (int i = 1;; ++i) {
            int cnt = 0;
            for (int cc : columnCounts)
                if (cc >= i) ++cnt;
            if (cnt == 0) break;
            lambda.push_back(cnt);
        }
        partitions.push_back(std::move(lambda));
    }

    size_t nfactors = 0;
    for (const auto& l : partitions) nfactors = std::max(nfactors, l.size());
    std::vector<Int> factors(nfactors, Int(1)); // descending, largest first
    for (size_t pi = 0; pi < primes.size(); ++pi) {
        for (size_t k = 0; k < partitions[pi].size(); ++k) {
            factors[k] *= ipow(primes[pi], static_cast<unsigned>(partitions[pi][k]));
        }
    }
    std::reverse(factors.begin(), factors.end());
    return factors;
}

} // namespace

LimitFingerprint fingerprintLimit(const StationarySystem& sys, int depth,
                                  const std::vector<Int>& denominators)
{
    if (depth < 1) throw std::invalid_argument("fingerprintLimit: depth must be >= 1");
    LimitFingerprint fp;
    fp.depth = depth;

    const int r = sys.group.free_rank;
    IntMat a = freeBlock(sys.endo);

    // divisibility witnesses: e_i/m ∈ A^-j Z^r  ⟺  column i of A^j ≡ 0 (mod m)
    std::vector<IntMat> powers;
    powers.reserve(static_cast<size_t>(depth));
    IntMat p = a;
    for (int j = 1; j <= depth; ++j) {
        powers.push_back(p);
        p = IntMat(p * a);
    }
    for (int i = 0; i < r; ++i) {
        for (const Int& m : denominators) {
            DivisibilityWitness w;
            w.generator = i;
            w.denominator = m;
            for (int j = 1; j <= depth && !w.member; ++j) {
                const IntMat& pj = powers[static_cast<size_t>(j - 1)];
                bool divisible = true;
                for (Index row = 0; row < pj.rows(); ++row) {
                    if (pj(row, i) % m != 0) { divisible = false; break; }
                }
                if (divisible) {
                    w.member = true;
                    w.depth_found = j;
                }
            }
            fp.witnesses.push_back(std::move(w));
        }
    }

    // torsion orders: enumerate the image of the depth-th iterate on T(G)
    const std::vector<Int>& orders = sys.group.torsion;
    if (!orders.empty()) {
        Int size = 1;
        for (const Int& t : orders) size *= t;
        if (size > 1000000)
            throw std::invalid_argument("fingerprintLimit: torsion too large to enumerate");

        IntMat b = matPow(torsionBlock(sys.endo), static_cast<unsigned>(depth));
        const size_t mcnt = orders.size();
        std::set<std::vector<Int>> image;
        std::vector<Int> x(mcnt, Int(0));
        for (;;) {
            std::vector<Int> y(mcnt, Int(0));
            for (size_t row = 0; row < mcnt; ++row) {
                Int acc = 0;
                for (size_t col = 0; col < mcnt; ++col)
                    acc += b(static_cast<Index>(row), static_cast<Index>(col)) * x[col];
                y[row] = ((acc % orders[row]) + orders[row]) % orders[row];
            }
            image.insert(std::move(y));
            // advance the mixed-radix counter
            size_t c = 0;
            while (c < mcnt) {
                x[c] += 1;
                if (x[c] < orders[c]) break;
                x[c] = 0;
                ++c;
            }
            if (c == mcnt) break;
        }
        fp.torsion_orders = factorsFromElements(image, orders);
    }
    return fp;
}

bool checkCanonicalAgainstFingerprint(const LimitGroup& l, const LimitFingerprint& fp)
{
    if (!l.isCanonical())
        throw std::invalid_argument("checkCanonicalAgainstFingerprint: limit must be canonical");

    if (l.torsion.torsion != fp.torsion_orders) return false;

    const StationarySystem& sys = l.presentation;
    const int r = sys.group.free_rank;

    // generators inside the eventual kernel are divisible by everything and
    // carry no information
    std::vector<bool> degenerate(static_cast<size_t>(r), false);
    bool kernelFree = true;
    if (r > 0) {
        IntMat ker = kernelLattice(matPow(freeBlock(sys.endo), static_cast<unsigned>(r)));
        if (ker.cols() > 0) {
            kernelFree = false;
            int kerRank = static_cast<int>(ker.cols());
            for (int i = 0; i < r; ++i) {
                IntMat ei = IntMat::Zero(r, 1);
                ei(i, 0) = 1;
                degenerate[static_cast<size_t>(i)] = rankQ(hcat(ker, ei)) == kerRank;
            }
        }
    }

    std::set<Int> allPrimes;
    for (const auto& sc : l.free_part.scalars)
        for (const Int& p : sc.primes) allPrimes.insert(p);
    const bool aligned = l.free_part.basis_aligned &&
                         static_cast<int>(l.free_part.scalars.size()) == r;

    for (const DivisibilityWitness& w : fp.witnesses) {
        if (w.generator < 0 || w.generator >= r) return false;
        if (degenerate[static_cast<size_t>(w.generator)]) continue;

        if (aligned) {
            // expected membership against the raw scalar of this summand
            const Int& raw = l.free_part.scalars[static_cast<size_t>(w.generator)].raw;
            bool expected = false;
            Int pw = 1;
            for (int j = 1; j <= fp.depth && !expected; ++j) {
                pw *= raw;
                expected = (pw % w.denominator == 0);
            }
            if (expected != w.member) return false;
        } else if (kernelFree) {
            // unaligned: only the negative direction is sound, and only when
            // the action has no eventual kernel (a kernel direction skew to
            // the coordinate axes can make other columns divisible by primes
            // outside the inverted set)
            for (const Int& p : primeFactors(w.denominator)) {
                if (w.member && allPrimes.find(p) == allPrimes.end()) return false;
            }
        }
    }
    return true;
}

Int torusFixedPoints(const IntMat& a, unsigned k)
{
    if (a.rows() != a.cols()) throw std::invalid_argument("torusFixedPoints: matrix must be square");
    if (!isExpandingMatrix(a))
        throw std::invalid_argument("torusFixedPoints: matrix is not expanding");
    IntMat p = matPow(a, k);
    for (Index i = 0; i < p.rows(); ++i) p(i, i) -= 1;
    return absInt(determinant(p));
}

std::vector<Int> defaultDenominators(const Int& n)
{
    std::vector<Int> d = {2, 3, 5, 7, 11, 13};
    for (const Int& p : primeFactors(n)) {
        if (std::find(d.begin(), d.end(), p) == d.end()) d.push_back(p);
    }
    std::sort(d.begin(), d.end());
    return d;
}

} // namespace solinv
