#include "solinv/limits.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace solinv {

StationarySystem makeSystem(const GroupHom& endo)
{
    if (!(endo.domain == endo.codomain))
        throw std::invalid_argument("makeSystem: endomorphism must be a self-map");
    return StationarySystem{endo.domain, endo};
}

StationarySystem makeSystem(const FgAbGroup& g, const IntMat& endoMatrix)
{
    return StationarySystem{g, makeHom(g, g, endoMatrix)};
}

namespace {

// strictly decreasing subgroup chains of T are bounded by log2 |T|
int stabilizationBound(const std::vector<Int>& torsion)
{
    int bits = 0;
    for (const Int& t : torsion) bits += static_cast<int>(boost::multiprecision::msb(t)) + 1;
    return bits + 2;
}

// invariant factors of M / diag(orders) for a lattice basis M containing diag(orders)
std::vector<Int> quotientInvariants(const IntMat& basis, const std::vector<Int>& orders)
{
    auto x = solveRational(basis, diagMatrix(orders));
    if (!x || !isIntegral(*x))
        throw std::logic_error("quotientInvariants: order lattice not contained in basis lattice");
    SmithForm s = smithNormalForm(toIntegral(*x));
    std::vector<Int> out;
    for (const Int& f : s.invariant_factors)
        if (f > 1) out.push_back(f);
    return out;
}

bool isDiagonal(const IntMat& a)
{
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            if (i != j && a(i, j) != 0) return false;
    return true;
}

// integer roots of a monic polynomial with multiplicities, ascending
std::vector<std::pair<Int, int>> integerRoots(std::vector<Int> poly)
{
    std::vector<std::pair<Int, int>> roots;
    if (poly.empty() || poly[0] == 0)
        throw std::logic_error("integerRoots: expected nonzero constant term");

    std::vector<Int> candidates;
    Int c0 = absInt(poly[0]);
    for (Int d = 1; d * d <= c0; ++d) {
        if (c0 % d == 0) {
            candidates.push_back(d);
            candidates.push_back(c0 / d);
        }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    auto deflate = [](const std::vector<Int>& p, const Int& r) {
        // p / (x - r), valid only when r is a root
        std::vector<Int> q(p.size() - 1);
        Int carry = p.back();
        for (size_t i = p.size() - 1; i-- > 0;) {
            q[i] = carry;
            carry = p[i] + r * carry;
        }
        return q;
    };

    for (const Int& c : candidates) {
        for (const Int& r : {Int(c), Int(-c)}) {
            int mult = 0;
            while (poly.size() > 1 && evalPoly(poly, r) == 0) {
                poly = deflate(poly, r);
                ++mult;
            }
            if (mult > 0) roots.emplace_back(r, mult);
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

} // namespace

FgAbGroup eventualTorsion(const StationarySystem& sys)
{
    const std::vector<Int>& orders = sys.group.torsion;
    if (orders.empty()) return groupTrivial();

    IntMat b = torsionBlock(sys.endo);
    IntMat orderLattice = diagMatrix(orders);
    IntMat basis = hermiteBasis(hcat(b, orderLattice));
    const int bound = stabilizationBound(orders);
    for (int iter = 0; iter < bound; ++iter) {
        IntMat next = hermiteBasis(hcat(IntMat(b * basis), orderLattice));
        if (next == basis) return FgAbGroup{0, quotientInvariants(basis, orders)};
        basis = std::move(next);
    }
    throw std::logic_error("eventualTorsion: image chain failed to stabilize");
}

LimitGroup stationaryLimit(const StationarySystem& sys)
{
    LimitGroup l;
    l.presentation = sys;
    l.torsion = eventualTorsion(sys);

    FreeLimit& fl = l.free_part;
    const int r = sys.group.free_rank;
    if (r == 0) return l; // empty canonical free part

    IntMat a = freeBlock(sys.endo);
    IntMat ker = kernelLattice(matPow(a, static_cast<unsigned>(r)));
    const Index k = ker.cols();

    IntMat act; // action on the free quotient by the eventual kernel
    if (k == 0) {
        act = a;
    } else if (k == r) {
        return l; // the whole free part dies in the limit
    } else {
        // move the (saturated) kernel lattice onto the first k coordinates
        SmithForm sk = smithNormalForm(ker);
        for (const Int& f : sk.invariant_factors)
            if (f != 1) throw std::logic_error("stationaryLimit: kernel lattice not saturated");
        IntMat conj = IntMat(sk.U * a * unimodularInverse(sk.U));
        if (!isZeroMat(IntMat(conj.bottomLeftCorner(r - k, k))))
            throw std::logic_error("stationaryLimit: action does not preserve the eventual kernel");
        act = conj.bottomRightCorner(r - k, r - k);
    }

    const Index s = act.rows();
    Int det = determinant(act);
    if (det == 0) throw std::logic_error("stationaryLimit: eventual-image action is singular");

    auto pushScalar = [&](const Int& m) {
        ScalarSummand sum;
        sum.raw = absInt(m);
        if (sum.raw != 1) sum.primes = primeFactors(sum.raw);
        fl.scalars.push_back(std::move(sum));
    };

    if (isDiagonal(act)) {
        for (Index i = 0; i < s; ++i) pushScalar(act(i, i));
        fl.basis_aligned = (k == 0);
        return l;
    }

    // Attempt a unimodular splitting into scalar summands: integer
    // eigenvalues with full saturated eigenlattices assembling to a basis.
    bool split = false;
    std::vector<Int> scalars;
    std::vector<Int> poly = charPoly(act);
    std::vector<std::pair<Int, int>> roots = integerRoots(poly);
    int total = 0;
    for (auto& [root, mult] : roots) total += mult;
    if (total == static_cast<int>(s)) {
        IntMat basis(s, 0);
        bool ok = true;
        for (auto& [root, mult] : roots) {
            IntMat shifted = act;
            for (Index i = 0; i < s; ++i) shifted(i, i) -= root;
            IntMat eigen = kernelLattice(shifted);
            if (eigen.cols() != mult) { ok = false; break; }
            basis = hcat(basis, eigen);
            for (int c = 0; c < mult; ++c) scalars.push_back(root);
        }
        if (ok && absInt(determinant(basis)) == 1) split = true;
    }

    if (split) {
        for (const Int& m : scalars) pushScalar(m);
        fl.basis_aligned = false;
    } else {
        fl.kind = FreeLimit::Kind::Opaque;
        fl.opaque_rank = static_cast<int>(s);
        fl.inverted_primes = primeFactors(det);
        fl.action = act;
    }
    return l;
}

int limitRank(const StationarySystem& sys)
{
    const int r = sys.group.free_rank;
    if (r == 0) return 0;
    return rankQ(matPow(freeBlock(sys.endo), static_cast<unsigned>(r)));
}

Int inducedTrace(const StationarySystem& sys, unsigned k)
{
    if (k < 1) throw std::invalid_argument("inducedTrace: k must be >= 1");
    if (sys.group.free_rank == 0) return 0;
    IntMat p = matPow(freeBlock(sys.endo), k);
    Int tr = 0;
    for (Index i = 0; i < p.rows(); ++i) tr += p(i, i);
    return tr;
}

namespace {

std::vector<std::vector<Int>> sortedPrimeSets(const FreeLimit& fl)
{
    std::vector<std::vector<Int>> sets;
    sets.reserve(fl.scalars.size());
    for (const auto& sc : fl.scalars) sets.push_back(sc.primes);
    std::sort(sets.begin(), sets.end());
    return sets;
}

} // namespace

IsoAnswer limitsIsomorphic(const LimitGroup& a, const LimitGroup& b)
{
    if (!(a.torsion == b.torsion)) return IsoAnswer::No;
    if (a.rank() != b.rank()) return IsoAnswer::No;
    if (a.isCanonical() && b.isCanonical())
        return sortedPrimeSets(a.free_part) == sortedPrimeSets(b.free_part) ? IsoAnswer::Yes
                                                                            : IsoAnswer::No;
    return IsoAnswer::Unknown;
}

LimitGroup trivialLimit()
{
    LimitGroup l;
    l.presentation = makeSystem(groupTrivial(), IntMat(0, 0));
    return l;
}

namespace {

void renderTorsion(std::ostringstream& out, bool& first, const FgAbGroup& torsion)
{
    for (const Int& t : torsion.torsion) {
        if (!first) out << " (+) ";
        first = false;
        out << "Z/" << t;
    }
}

} // namespace

std::string renderLimit(const LimitGroup& l)
{
    std::ostringstream out;
    bool first = true;

    if (l.free_part.kind == FreeLimit::Kind::Opaque) {
        out << "Opaque(rank=" << l.free_part.opaque_rank << ", primes={";
        for (size_t i = 0; i < l.free_part.inverted_primes.size(); ++i) {
            if (i) out << ",";
            out << l.free_part.inverted_primes[i];
        }
        out << "})";
        first = false;
    } else {
        if (l.isTrivial()) return "0";
        // group summands by inverted prime set
        std::map<std::vector<Int>, int> byPrimes;
        for (const auto& sc : l.free_part.scalars) byPrimes[sc.primes] += 1;
        for (const auto& [primes, count] : byPrimes) {
            if (!first) out << " (+) ";
            first = false;
            if (primes.empty()) {
                out << "Z";
            } else {
                Int prod = 1;
                for (const Int& p : primes) prod *= p;
                out << "Z[1/" << prod << "]";
            }
            if (count > 1) out << "^" << count;
        }
    }
    renderTorsion(out, first, l.torsion);
    return out.str();
}

std::string renderLimitDecorated(const LimitGroup& l)
{
    std::string canonical = renderLimit(l);
    if (l.free_part.kind != FreeLimit::Kind::Scalars) return canonical;

    bool rawDiffers = false;
    for (const auto& sc : l.free_part.scalars) {
        Int prod = 1;
        for (const Int& p : sc.primes) prod *= p;
        if (sc.raw != prod) { rawDiffers = true; break; }
    }
    if (!rawDiffers) return canonical;

    std::ostringstream raw;
    bool first = true;
    for (const auto& sc : l.free_part.scalars) {
        if (!first) raw << " (+) ";
        first = false;
        if (sc.raw == 1)
            raw << "Z";
        else
            raw << "Z[1/" << sc.raw << "]";
    }
    renderTorsion(raw, first, l.torsion);
    return canonical + " (= " + raw.str() + ")";
}

} // namespace solinv
