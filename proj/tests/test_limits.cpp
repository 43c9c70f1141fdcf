#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "solinv/limits.hpp"

using namespace solinv;

namespace {

IntMat mat(std::initializer_list<std::initializer_list<int>> rows)
{
    const Index r = static_cast<Index>(rows.size());
    const Index c = r ? static_cast<Index>(rows.begin()->size()) : 0;
    IntMat m(r, c);
    Index i = 0;
    for (const auto& row : rows) {
        Index j = 0;
        for (int v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

std::vector<std::vector<Int>> primeSets(const LimitGroup& l)
{
    std::vector<std::vector<Int>> sets;
    for (const auto& sc : l.free_part.scalars) sets.push_back(sc.primes);
    std::sort(sets.begin(), sets.end());
    return sets;
}

} // namespace

TEST_CASE("eventual torsion")
{
    CHECK(eventualTorsion(makeSystem(groupCyclic(2), mat({{1}}))) == groupCyclic(2));
    CHECK(eventualTorsion(makeSystem(groupCyclic(2), mat({{0}}))).isTrivial());
    FgAbGroup z4sq = parseGroup("Z/4 (+) Z/4");
    CHECK(eventualTorsion(makeSystem(z4sq, IntMat(IntMat::Identity(2, 2)))) == z4sq);
    // multiplication by 2 on Z/4 eventually gives the 2-element subgroup... and
    // then its image again: 2·(2Z/4) = 0, so the chain ends at 0
    CHECK(eventualTorsion(makeSystem(groupCyclic(4), mat({{2}}))).isTrivial());
    // multiplication by 2 on Z/3 is an automorphism
    CHECK(eventualTorsion(makeSystem(groupCyclic(3), mat({{2}}))) == groupCyclic(3));
}

TEST_CASE("stationary limits of scalar systems")
{
    LimitGroup id = stationaryLimit(makeSystem(groupZ(1), mat({{1}})));
    CHECK(id.isCanonical());
    CHECK(id.rank() == 1);
    CHECK(id.free_part.scalars[0].primes.empty());
    CHECK(renderLimit(id) == "Z");

    LimitGroup nine = stationaryLimit(makeSystem(groupZ(1), mat({{9}})));
    CHECK(nine.free_part.scalars[0].primes == std::vector<Int>{3});
    CHECK(nine.free_part.scalars[0].raw == 9);
    CHECK(renderLimit(nine) == "Z[1/3]");
    CHECK(renderLimitDecorated(nine) == "Z[1/3] (= Z[1/9])");

    LimitGroup mixed = stationaryLimit(makeSystem(parseGroup("Z (+) Z/2"), mat({{3, 0}, {0, 1}})));
    CHECK(mixed.torsion == groupCyclic(2));
    CHECK(renderLimit(mixed) == "Z[1/3] (+) Z/2");

    LimitGroup diag = stationaryLimit(makeSystem(groupZ(2), mat({{2, 0}, {0, 3}})));
    CHECK(primeSets(diag) == std::vector<std::vector<Int>>{{Int(2)}, {Int(3)}});
    CHECK(diag.free_part.basis_aligned);
}

TEST_CASE("limits with collapsing directions")
{
    // one summand dies, the other inverts 5
    LimitGroup l = stationaryLimit(makeSystem(groupZ(2), mat({{0, 0}, {0, 5}})));
    CHECK(l.rank() == 1);
    CHECK(primeSets(l) == std::vector<std::vector<Int>>{{Int(5)}});

    // nilpotent action kills everything
    LimitGroup n = stationaryLimit(makeSystem(groupZ(2), mat({{0, 1}, {0, 0}})));
    CHECK(n.isTrivial());
    CHECK(renderLimit(n) == "0");
}

TEST_CASE("unimodular splitting beyond literally diagonal actions")
{
    // conjugate of diag(2,3): eigenlattices assemble unimodularly
    LimitGroup l = stationaryLimit(makeSystem(groupZ(2), mat({{2, 1}, {0, 3}})));
    REQUIRE(l.isCanonical());
    CHECK(primeSets(l) == std::vector<std::vector<Int>>{{Int(2)}, {Int(3)}});
    CHECK_FALSE(l.free_part.basis_aligned);
}

TEST_CASE("opaque fallback")
{
    // Jordan block: not diagonalizable over Q
    LimitGroup j = stationaryLimit(makeSystem(groupZ(2), mat({{2, 1}, {0, 2}})));
    CHECK_FALSE(j.isCanonical());
    CHECK(j.rank() == 2);
    CHECK(j.free_part.inverted_primes == std::vector<Int>{2});
    CHECK(renderLimit(j) == "Opaque(rank=2, primes={2})");

    // irreducible characteristic polynomial x^2 + 2
    LimitGroup irr = stationaryLimit(makeSystem(groupZ(2), mat({{0, -2}, {1, 0}})));
    CHECK_FALSE(irr.isCanonical());

    LimitGroup canonical = stationaryLimit(makeSystem(groupZ(2), mat({{2, 0}, {0, 2}})));
    CHECK(limitsIsomorphic(j, canonical) == IsoAnswer::Unknown);
}

TEST_CASE("limit ranks")
{
    CHECK(limitRank(makeSystem(groupZ(2), IntMat(IntMat::Identity(2, 2)))) == 2);
    CHECK(limitRank(makeSystem(groupZ(2), mat({{0, 0}, {0, 5}}))) == 1);
    CHECK(limitRank(makeSystem(parseGroup("Z/2"), mat({{1}}))) == 0);
}

TEST_CASE("induced traces")
{
    StationarySystem byN = makeSystem(groupZ(1), mat({{7}}));
    CHECK(inducedTrace(byN, 3) == 343);
    StationarySystem neg = makeSystem(groupZ(1), mat({{-1}}));
    CHECK(inducedTrace(neg, 3) == -1);
    CHECK(inducedTrace(neg, 4) == 1);
    StationarySystem tri = makeSystem(groupZ(2), mat({{2, 1}, {0, 3}}));
    CHECK(inducedTrace(tri, 2) == 13);
    CHECK_THROWS_AS(inducedTrace(tri, 0), std::invalid_argument);
}

TEST_CASE("isomorphism of canonical limits")
{
    LimitGroup a = stationaryLimit(makeSystem(groupZ(1), mat({{9}})));
    LimitGroup b = stationaryLimit(makeSystem(groupZ(1), mat({{3}})));
    CHECK(limitsIsomorphic(a, b) == IsoAnswer::Yes); // Z[1/9] = Z[1/3]

    LimitGroup five = stationaryLimit(makeSystem(groupZ(1), mat({{5}})));
    LimitGroup c125 = stationaryLimit(makeSystem(groupZ(1), mat({{125}})));
    CHECK(limitsIsomorphic(five, c125) == IsoAnswer::Yes);

    LimitGroup two = stationaryLimit(makeSystem(groupZ(1), mat({{2}})));
    CHECK(limitsIsomorphic(two, b) == IsoAnswer::No);

    LimitGroup withTorsion = stationaryLimit(makeSystem(parseGroup("Z (+) Z/2"), mat({{2, 0}, {0, 1}})));
    CHECK(limitsIsomorphic(two, withTorsion) == IsoAnswer::No);
}

TEST_CASE("identity systems keep the group")
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> rank(0, 3), tors(0, 2), pick(0, 2);
    const Int pool[] = {Int(2), Int(4), Int(9)};
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Int> orders;
        for (int i = 0, n = tors(rng); i < n; ++i) orders.push_back(pool[pick(rng)]);
        FgAbGroup g{rank(rng), canonicalFactors(orders)};
        if (g.isTrivial()) continue;
        LimitGroup l = stationaryLimit(makeSystem(identityHom(g)));
        CHECK(l.torsion == torsionSubgroup(g));
        CHECK(l.rank() == g.free_rank);
        for (const auto& sc : l.free_part.scalars) CHECK(sc.primes.empty());
    }
}

TEST_CASE("limit rank equals the free rank for nonsingular actions")
{
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> entry(-5, 5);
    for (int trial = 0; trial < 30; ++trial) {
        IntMat a(3, 3);
        for (Index i = 0; i < 3; ++i)
            for (Index j = 0; j < 3; ++j) a(i, j) = entry(rng);
        if (determinant(a) == 0) continue;
        CHECK(limitRank(makeSystem(groupZ(3), a)) == 3);
    }
}

TEST_CASE("diagonal traces are power sums")
{
    StationarySystem d = makeSystem(groupZ(3), mat({{2, 0, 0}, {0, -3, 0}, {0, 0, 5}}));
    for (unsigned k = 1; k <= 5; ++k)
        CHECK(inducedTrace(d, k) == ipow(2, k) + ipow(-3, k) + ipow(5, k));
}

TEST_CASE("negative scalars invert the same primes")
{
    LimitGroup neg = stationaryLimit(makeSystem(groupZ(1), mat({{-6}})));
    CHECK(neg.free_part.scalars[0].primes == std::vector<Int>({Int(2), Int(3)}));
    CHECK(renderLimit(neg) == "Z[1/6]");
}
