#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "solinv/invariants.hpp"
#include "solinv/oracle.hpp"

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

bool witness(const LimitFingerprint& fp, int gen, const Int& denom)
{
    for (const auto& w : fp.witnesses)
        if (w.generator == gen && w.denominator == denom) return w.member;
    throw std::logic_error("witness not found");
}

} // namespace

TEST_CASE("divisibility membership for scalar systems")
{
    StationarySystem nine = makeSystem(groupZ(1), mat({{9}}));
    LimitFingerprint fp = fingerprintLimit(nine, 2, {Int(3), Int(9), Int(2)});
    CHECK(witness(fp, 0, 3));
    CHECK(witness(fp, 0, 9));
    CHECK_FALSE(witness(fp, 0, 2));

    StationarySystem id = makeSystem(groupZ(1), mat({{1}}));
    LimitFingerprint fpId = fingerprintLimit(id, 6, {Int(2), Int(3), Int(5)});
    for (const auto& w : fpId.witnesses) CHECK_FALSE(w.member);
}

TEST_CASE("divisibility membership is coordinatewise for diagonal systems")
{
    StationarySystem d = makeSystem(groupZ(2), mat({{2, 0}, {0, 3}}));
    LimitFingerprint fp = fingerprintLimit(d, 4, {Int(2), Int(3)});
    CHECK(witness(fp, 0, 2));
    CHECK_FALSE(witness(fp, 0, 3));
    CHECK(witness(fp, 1, 3));
    CHECK_FALSE(witness(fp, 1, 2));
}

TEST_CASE("membership is monotone in depth")
{
    std::mt19937_64 rng(19);
    std::uniform_int_distribution<int> entry(-8, 8);
    for (int trial = 0; trial < 20; ++trial) {
        IntMat a(2, 2);
        for (Index i = 0; i < 2; ++i)
            for (Index j = 0; j < 2; ++j) a(i, j) = entry(rng);
        StationarySystem sys = makeSystem(groupZ(2), a);
        LimitFingerprint shallow = fingerprintLimit(sys, 3, defaultDenominators(6));
        LimitFingerprint deep = fingerprintLimit(sys, 6, defaultDenominators(6));
        REQUIRE(shallow.witnesses.size() == deep.witnesses.size());
        for (size_t i = 0; i < shallow.witnesses.size(); ++i) {
            if (shallow.witnesses[i].member) CHECK(deep.witnesses[i].member);
        }
    }
}

TEST_CASE("fingerprint torsion orders")
{
    StationarySystem sys = makeSystem(parseGroup("Z/4 (+) Z/4"), IntMat(IntMat::Identity(2, 2)));
    LimitFingerprint fp = fingerprintLimit(sys, 3, {});
    CHECK(fp.torsion_orders == std::vector<Int>({Int(4), Int(4)}));

    StationarySystem killed = makeSystem(parseGroup("Z/4"), mat({{2}}));
    CHECK(fingerprintLimit(killed, 3, {}).torsion_orders.empty());

    StationarySystem mixed = makeSystem(parseGroup("Z/2 (+) Z/4"), mat({{1, 0}, {0, 1}}));
    CHECK(fingerprintLimit(mixed, 2, {}).torsion_orders == std::vector<Int>({Int(2), Int(4)}));
}

TEST_CASE("canonical limits agree with their fingerprints")
{
    for (std::string name : {"klein9", "circle2", "torus23", "o36x125"}) {
        ExpandingEndo e = *findEndo(name);
        InvariantReport r = computeReport(e);
        std::vector<Int> denoms = defaultDenominators(e.degree);
        for (int k = 0; k <= e.manifold.dim; ++k) {
            INFO(name << " degree " << k);
            const LimitGroup& l = r.unstable_homology[static_cast<size_t>(k)];
            LimitFingerprint fp = fingerprintLimit(l.presentation, 8, denoms);
            CHECK(checkCanonicalAgainstFingerprint(l, fp));
        }
    }
}

TEST_CASE("corrupted canonical forms are rejected")
{
    InvariantReport klein = computeReport(*findEndo("klein9"));
    std::vector<Int> denoms = defaultDenominators(9);

    LimitGroup wrongPrimes = klein.cech_x[1];
    REQUIRE(wrongPrimes.free_part.scalars.size() == 1);
    wrongPrimes.free_part.scalars[0].primes = {Int(2)};
    wrongPrimes.free_part.scalars[0].raw = 2;
    LimitFingerprint fp = fingerprintLimit(wrongPrimes.presentation, 8, denoms);
    CHECK_FALSE(checkCanonicalAgainstFingerprint(wrongPrimes, fp));

    LimitGroup wrongTorsion = klein.stable_homology[2];
    wrongTorsion.torsion = groupCyclic(4);
    LimitFingerprint fp2 = fingerprintLimit(wrongTorsion.presentation, 8, denoms);
    CHECK_FALSE(checkCanonicalAgainstFingerprint(wrongTorsion, fp2));

    LimitGroup opaque = stationaryLimit(makeSystem(groupZ(2), mat({{2, 1}, {0, 2}})));
    LimitFingerprint fp3 = fingerprintLimit(opaque.presentation, 4, denoms);
    CHECK_THROWS_AS(checkCanonicalAgainstFingerprint(opaque, fp3), std::invalid_argument);
}

TEST_CASE("random stationary systems stay consistent with their fingerprints")
{
    std::mt19937_64 rng(71);
    std::uniform_int_distribution<int> entry(-6, 6), dim(1, 3);
    int canonicalSeen = 0;
    for (int trial = 0; trial < 150; ++trial) {
        Index n = dim(rng);
        IntMat a(n, n);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) a(i, j) = entry(rng);
        StationarySystem sys = makeSystem(groupZ(static_cast<int>(n)), a);
        LimitGroup l = stationaryLimit(sys);
        if (!l.isCanonical()) continue;
        ++canonicalSeen;
        Int det = determinant(a);
        std::vector<Int> denoms = defaultDenominators(det == 0 ? Int(6) : det);
        LimitFingerprint fp = fingerprintLimit(sys, 8, denoms);
        INFO("trial " << trial);
        CHECK(checkCanonicalAgainstFingerprint(l, fp));
    }
    CHECK(canonicalSeen > 30); // the sweep must actually exercise the checker
}

TEST_CASE("skew eventual kernels do not fool the checker")
{
    // A kills the primitive vector (1,2) and acts by 3 on the quotient, so
    // every column of A^j is divisible by 2 although only 3 is inverted;
    // the checker must not read that as a contradiction
    StationarySystem skew = makeSystem(groupZ(2), mat({{0, 0}, {-6, 3}}));
    LimitGroup l = stationaryLimit(skew);
    REQUIRE(l.isCanonical());
    REQUIRE(l.rank() == 1);
    CHECK(l.free_part.scalars[0].primes == std::vector<Int>{3});

    LimitFingerprint fp = fingerprintLimit(skew, 8, {Int(2), Int(3)});
    CHECK(witness(fp, 0, 2)); // the skew-kernel divisibility really happens
    CHECK(witness(fp, 0, 3));
    CHECK(checkCanonicalAgainstFingerprint(l, fp));
}

TEST_CASE("torus fixed point counts")
{
    CHECK(torusFixedPoints(mat({{2}}), 3) == 7);
    CHECK(torusFixedPoints(mat({{2}}), 1) == 1);
    CHECK(torusFixedPoints(mat({{2, 0}, {0, 3}}), 1) == 2);
    CHECK_THROWS_AS(torusFixedPoints(mat({{2, 1}, {1, 1}}), 1), std::invalid_argument);
}

TEST_CASE("default denominators cover the covering degree")
{
    std::vector<Int> d = defaultDenominators(125);
    CHECK(std::find(d.begin(), d.end(), Int(5)) != d.end());
    CHECK(std::find(d.begin(), d.end(), Int(13)) != d.end());
    CHECK(std::is_sorted(d.begin(), d.end()));
}
