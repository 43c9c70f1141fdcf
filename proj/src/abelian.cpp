#include "solinv/abelian.hpp"

#include <algorithm>
#include <sstream>

namespace solinv {

FgAbGroup groupZ(int rank) { return FgAbGroup{rank, {}}; }

FgAbGroup groupCyclic(const Int& order)
{
    if (order < 2) throw std::invalid_argument("groupCyclic: order must be >= 2");
    return FgAbGroup{0, {order}};
}

FgAbGroup groupTrivial() { return FgAbGroup{}; }

std::vector<Int> canonicalFactors(std::vector<Int> orders)
{
    for (const Int& t : orders)
        if (t < 1) throw std::invalid_argument("canonicalFactors: orders must be positive");
    if (orders.empty()) return {};
    SmithForm s = smithNormalForm(diagMatrix(orders));
    std::vector<Int> out;
    for (const Int& f : s.invariant_factors)
        if (f > 1) out.push_back(f);
    return out;
}

CanonicalizedPresentation canonicalizePresentation(int n_generators, const IntMat& relations)
{
    if (relations.rows() > 0 && relations.cols() != n_generators)
        throw std::invalid_argument("canonicalizePresentation: relations must have one column per generator");

    const Index n = n_generators;
    IntMat columns(n, relations.rows()); // relation subgroup as column span, n x r
    for (Index r = 0; r < relations.rows(); ++r)
        for (Index c = 0; c < n; ++c) columns(c, r) = relations(r, c);
    SmithForm s = smithNormalForm(columns);
    IntMat uinv = unimodularInverse(s.U);

    // generator i in U-coordinates has order D(i,i) (0 beyond the rank)
    std::vector<Int> order(static_cast<size_t>(n), Int(0));
    const Index nmin = std::min(columns.rows(), columns.cols());
    for (Index i = 0; i < nmin; ++i) order[static_cast<size_t>(i)] = s.D(i, i);

    std::vector<Index> keep; // free coordinates first, then torsion ascending
    for (Index i = 0; i < n; ++i)
        if (order[static_cast<size_t>(i)] == 0) keep.push_back(i);
    int free_rank = static_cast<int>(keep.size());
    std::vector<Int> torsion;
    for (Index i = 0; i < n; ++i) {
        if (order[static_cast<size_t>(i)] >= 2) {
            keep.push_back(i);
            torsion.push_back(order[static_cast<size_t>(i)]);
        }
    }

    CanonicalizedPresentation cp;
    cp.group = FgAbGroup{free_rank, std::move(torsion)};
    const Index g = static_cast<Index>(keep.size());
    cp.to_canonical = IntMat(g, n);
    cp.from_canonical = IntMat(n, g);
    for (Index k = 0; k < g; ++k) {
        cp.to_canonical.row(k) = s.U.row(keep[static_cast<size_t>(k)]);
        cp.from_canonical.col(k) = uinv.col(keep[static_cast<size_t>(k)]);
    }
    return cp;
}

FgAbGroup groupFromPresentation(int n_generators, const IntMat& relations)
{
    return canonicalizePresentation(n_generators, relations).group;
}

FgAbGroup torsionSubgroup(const FgAbGroup& g) { return FgAbGroup{0, g.torsion}; }

FgAbGroup directSum(const FgAbGroup& a, const FgAbGroup& b)
{
    std::vector<Int> orders = a.torsion;
    orders.insert(orders.end(), b.torsion.begin(), b.torsion.end());
    return FgAbGroup{a.free_rank + b.free_rank, canonicalFactors(std::move(orders))};
}

std::string renderGroup(const FgAbGroup& g)
{
    if (g.isTrivial()) return "0";
    std::ostringstream out;
    bool first = true;
    auto sep = [&] {
        if (!first) out << " (+) ";
        first = false;
    };
    if (g.free_rank == 1) {
        sep();
        out << "Z";
    } else if (g.free_rank > 1) {
        sep();
        out << "Z^" << g.free_rank;
    }
    for (const Int& t : g.torsion) {
        sep();
        out << "Z/" << t;
    }
    return out.str();
}

FgAbGroup parseGroup(const std::string& text)
{
    auto trim = [](std::string s) {
        size_t a = s.find_first_not_of(" \t");
        size_t b = s.find_last_not_of(" \t");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string t = trim(text);
    if (t == "0") return groupTrivial();

    int rank = 0;
    std::vector<Int> orders;
    size_t pos = 0;
    while (pos <= t.size()) {
        size_t next = t.find("(+)", pos);
        std::string piece = trim(next == std::string::npos ? t.substr(pos) : t.substr(pos, next - pos));
        if (piece.empty()) throw std::invalid_argument("parseGroup: empty summand in '" + text + "'");
        if (piece == "Z") {
            rank += 1;
        } else if (piece.rfind("Z^", 0) == 0) {
            int r = std::stoi(piece.substr(2));
            if (r < 1) throw std::invalid_argument("parseGroup: bad free rank in '" + text + "'");
            rank += r;
        } else if (piece.rfind("Z/", 0) == 0) {
            Int n(piece.substr(2));
            if (n < 2) throw std::invalid_argument("parseGroup: torsion order must be >= 2 in '" + text + "'");
            orders.push_back(n);
        } else {
            throw std::invalid_argument("parseGroup: unrecognized summand '" + piece + "'");
        }
        if (next == std::string::npos) break;
        pos = next + 3;
    }
    return FgAbGroup{rank, canonicalFactors(std::move(orders))};
}

std::vector<FgAbGroup> cohomologyFromHomology(const std::vector<FgAbGroup>& h,
                                              bool orientable, int d)
{
    if (static_cast<int>(h.size()) != d + 1)
        throw std::invalid_argument("cohomologyFromHomology: need exactly d+1 graded pieces");
    if (h[0] != groupZ(1))
        throw std::invalid_argument("cohomologyFromHomology: H_0 != Z (space not connected)");

    std::vector<FgAbGroup> out(static_cast<size_t>(d) + 1);
    if (orientable) {
        for (int k = 0; k <= d; ++k) out[static_cast<size_t>(k)] = h[static_cast<size_t>(d - k)];
    } else {
        out[0] = groupZ(1);
        for (int k = 1; k <= d; ++k) {
            out[static_cast<size_t>(k)] =
                FgAbGroup{h[static_cast<size_t>(k)].free_rank, h[static_cast<size_t>(k - 1)].torsion};
        }
    }
    return out;
}

std::pair<FgAbGroup, FgAbGroup> kGroupsLowDim(const std::vector<FgAbGroup>& graded, int d)
{
    if (d > 3)
        throw std::invalid_argument("kGroupsLowDim: degree-sum formula only available for d <= 3");
    if (static_cast<int>(graded.size()) != d + 1)
        throw std::invalid_argument("kGroupsLowDim: need exactly d+1 graded pieces");
    FgAbGroup even = groupTrivial(), odd = groupTrivial();
    for (int k = 0; k <= d; ++k) {
        if (k % 2 == 0)
            even = directSum(even, graded[static_cast<size_t>(k)]);
        else
            odd = directSum(odd, graded[static_cast<size_t>(k)]);
    }
    return {even, odd};
}

GroupHom makeHom(const FgAbGroup& domain, const FgAbGroup& codomain, const IntMat& matrix)
{
    if (matrix.rows() != codomain.generatorCount() || matrix.cols() != domain.generatorCount())
        throw std::invalid_argument("makeHom: matrix shape does not match generator counts");

    const int rc = codomain.free_rank, rd = domain.free_rank;
    IntMat m = matrix;
    // torsion generators cannot hit free generators
    for (Index i = 0; i < rc; ++i)
        for (Index j = rd; j < m.cols(); ++j)
            if (m(i, j) != 0)
                throw std::invalid_argument("makeHom: torsion generator mapped to a free generator");
    // torsion rows: reduce, then check order compatibility on torsion columns
    for (Index i = rc; i < m.rows(); ++i) {
        Int ti = codomain.generatorOrder(static_cast<int>(i));
        for (Index j = 0; j < m.cols(); ++j) {
            Int v = m(i, j) % ti;
            if (v < 0) v += ti;
            m(i, j) = v;
            if (j >= rd) {
                Int sj = domain.generatorOrder(static_cast<int>(j));
                if ((sj * m(i, j)) % ti != 0)
                    throw std::invalid_argument("makeHom: image order incompatible with generator order");
            }
        }
    }
    return GroupHom{domain, codomain, std::move(m)};
}

GroupHom identityHom(const FgAbGroup& g)
{
    return makeHom(g, g, IntMat::Identity(g.generatorCount(), g.generatorCount()));
}

GroupHom zeroHom(const FgAbGroup& domain, const FgAbGroup& codomain)
{
    return makeHom(domain, codomain, IntMat::Zero(codomain.generatorCount(), domain.generatorCount()));
}

GroupHom multiplicationHom(const FgAbGroup& g, const Int& m)
{
    IntMat mat = IntMat::Identity(g.generatorCount(), g.generatorCount());
    for (Index i = 0; i < mat.rows(); ++i) mat(i, i) = m;
    return makeHom(g, g, mat);
}

GroupHom compose(const GroupHom& f, const GroupHom& g)
{
    if (!(g.codomain == f.domain))
        throw std::invalid_argument("compose: codomain of inner map must equal domain of outer map");
    return makeHom(g.domain, f.codomain, IntMat(f.matrix * g.matrix));
}

bool isMultiplicationBy(const GroupHom& f, const Int& m)
{
    if (!(f.domain == f.codomain)) return false;
    const FgAbGroup& g = f.domain;
    const int r = g.free_rank;
    for (Index i = 0; i < f.matrix.rows(); ++i) {
        for (Index j = 0; j < f.matrix.cols(); ++j) {
            Int expected = (i == j) ? m : Int(0);
            Int diff = f.matrix(i, j) - expected;
            if (i < r) {
                if (diff != 0) return false;
            } else if (diff % g.generatorOrder(static_cast<int>(i)) != 0) {
                return false;
            }
        }
    }
    return true;
}

bool homsEqual(const GroupHom& f, const GroupHom& g)
{
    return f.domain == g.domain && f.codomain == g.codomain && f.matrix == g.matrix;
}

GroupHom torsionRestriction(const GroupHom& f)
{
    return makeHom(torsionSubgroup(f.domain), torsionSubgroup(f.codomain), torsionBlock(f));
}

IntMat freeBlock(const GroupHom& f)
{
    return f.matrix.topLeftCorner(f.codomain.free_rank, f.domain.free_rank);
}

IntMat torsionBlock(const GroupHom& f)
{
    return f.matrix.bottomRightCorner(f.codomain.torsionCount(), f.domain.torsionCount());
}

IntMat couplingBlock(const GroupHom& f)
{
    return f.matrix.bottomLeftCorner(f.codomain.torsionCount(), f.domain.free_rank);
}

namespace {

// presentation on the concatenated canonical generators of a and b
CanonicalizedPresentation sumPresentation(const FgAbGroup& a, const FgAbGroup& b)
{
    const int n = a.generatorCount() + b.generatorCount();
    std::vector<std::pair<int, Int>> orderRelations;
    for (int i = 0; i < a.generatorCount(); ++i) {
        Int o = a.generatorOrder(i);
        if (o != 0) orderRelations.emplace_back(i, o);
    }
    for (int i = 0; i < b.generatorCount(); ++i) {
        Int o = b.generatorOrder(i);
        if (o != 0) orderRelations.emplace_back(a.generatorCount() + i, o);
    }
    IntMat rel = IntMat::Zero(static_cast<Index>(orderRelations.size()), n);
    for (Index r = 0; r < rel.rows(); ++r) {
        rel(r, orderRelations[static_cast<size_t>(r)].first) = orderRelations[static_cast<size_t>(r)].second;
    }
    return canonicalizePresentation(n, rel);
}

} // namespace

SumDecomposition directSumWithInjections(const FgAbGroup& a, const FgAbGroup& b)
{
    CanonicalizedPresentation cp = sumPresentation(a, b);
    SumDecomposition d{cp.group,
                       makeHom(a, cp.group, cp.to_canonical.leftCols(a.generatorCount())),
                       makeHom(b, cp.group, cp.to_canonical.rightCols(b.generatorCount()))};
    return d;
}

GroupHom homDirectSum(const GroupHom& f, const GroupHom& g)
{
    CanonicalizedPresentation dom = sumPresentation(f.domain, g.domain);
    CanonicalizedPresentation cod = sumPresentation(f.codomain, g.codomain);

    const Index dr = f.codomain.generatorCount() + g.codomain.generatorCount();
    const Index dc = f.domain.generatorCount() + g.domain.generatorCount();
    IntMat block = IntMat::Zero(dr, dc);
    block.topLeftCorner(f.codomain.generatorCount(), f.domain.generatorCount()) = f.matrix;
    block.bottomRightCorner(g.codomain.generatorCount(), g.domain.generatorCount()) = g.matrix;

    IntMat m = IntMat(cod.to_canonical * block * dom.from_canonical);
    return makeHom(dom.group, cod.group, m);
}

} // namespace solinv
