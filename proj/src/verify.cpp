#include "solinv/verify.hpp"

#include <random>
#include <sstream>

#include <json.hpp>

#include "solinv/invariants.hpp"
#include "solinv/oracle.hpp"

namespace solinv {

namespace {

struct ExpectedLimit {
    std::vector<std::vector<Int>> prime_sets; // one per free summand
    std::vector<Int> torsion;
};

bool matches(const LimitGroup& l, ExpectedLimit e)
{
    if (!l.isCanonical()) return false;
    if (l.torsion.torsion != e.torsion) return false;
    std::vector<std::vector<Int>> sets;
    for (const auto& sc : l.free_part.scalars) sets.push_back(sc.primes);
    std::sort(sets.begin(), sets.end());
    std::sort(e.prime_sets.begin(), e.prime_sets.end());
    return sets == e.prime_sets;
}

struct Failure {
    std::ostringstream msg;
    bool failed = false;
    void operator()(bool ok, const std::string& what)
    {
        if (!ok && !failed) {
            failed = true;
            msg << what;
        }
    }
};

CriterionResult kleinGolden()
{
    CriterionResult r{1, "Klein bottle golden computation (klein9)", false, ""};
    Failure f;
    InvariantReport rep = computeReport(*findEndo("klein9"));

    const std::vector<Int> p3 = {Int(3)};
    f(matches(rep.stable_homology[0], {{p3}, {}}), "stable degree 0 != Z[1/9]");
    f(matches(rep.stable_homology[1], {{p3}, {}}), "stable degree 1 != Z[1/3]");
    f(matches(rep.stable_homology[2], {{}, {Int(2)}}), "stable degree 2 != Z/2");
    f(matches(rep.unstable_homology[0], {{p3}, {}}), "unstable degree 0 != Z[1/9]");
    f(matches(rep.unstable_homology[1], {{p3}, {Int(2)}}), "unstable degree 1 != Z[1/3] (+) Z/2");
    f(rep.unstable_homology[2].isTrivial(), "unstable degree 2 != 0");
    f(matches(rep.cech_x[0], {{{}}, {}}), "Cech degree 0 != Z");
    f(matches(rep.cech_x[1], {{p3}, {}}), "Cech degree 1 != Z[1/3]");
    f(matches(rep.cech_x[2], {{}, {Int(2)}}), "Cech degree 2 != Z/2");

    r.pass = !f.failed;
    r.detail = f.failed ? f.msg.str() : "all three gradeds reproduced";
    return r;
}

CriterionResult catalogIntegrity()
{
    CriterionResult r{2, "catalog integrity (ten flat 3-manifolds)", false, ""};
    Failure f;
    int count3 = 0;
    for (const FlatManifold& m : catalog()) {
        std::vector<std::string> bad = validate(m);
        f(bad.empty(), m.name + ": " + (bad.empty() ? "" : bad.front()));
        f(eulerCharacteristic(m) == 0, m.name + ": Euler characteristic nonzero");
        if (m.dim == 3) ++count3;
    }
    f(count3 == 10, "expected exactly ten 3-manifold rows");
    r.pass = !f.failed;
    r.detail = f.failed ? f.msg.str() : "all rows validate, chi = 0 everywhere";
    return r;
}

CriterionResult degreeZeroAll()
{
    CriterionResult r{3, "degree-zero limits are Z[1/n] for every builtin", false, ""};
    Failure f;
    for (const ExpandingEndo& e : builtinEndos()) {
        InvariantReport rep = computeReport(e);
        f(checkDegreeZero(rep).status == CheckStatus::Pass, e.name + ": degree-zero check failed");
    }
    r.pass = !f.failed;
    r.detail = f.failed ? f.msg.str() : "all builtins pass";
    return r;
}

CriterionResult topDegreeAll()
{
    CriterionResult r{4, "top-degree limits (Z orientable, 0 for Klein)", false, ""};
    Failure f;
    for (const ExpandingEndo& e : builtinEndos()) {
        InvariantReport rep = computeReport(e);
        f(checkTopDegree(rep).status == CheckStatus::Pass, e.name + ": top-degree check failed");
    }
    r.pass = !f.failed;
    r.detail = f.failed ? f.msg.str() : "all builtins pass";
    return r;
}

CriterionResult rationalAll()
{
    CriterionResult r{5, "limit ranks equal Betti numbers for every builtin", false, ""};
    Failure f;
    for (const ExpandingEndo& e : builtinEndos()) {
        InvariantReport rep = computeReport(e);
        f(checkRational(rep).status == CheckStatus::Pass, e.name + ": rational-rank check failed");
    }
    r.pass = !f.failed;
    r.detail = f.failed ? f.msg.str() : "all builtins pass";
    return r;
}

CriterionResult torsionSpecial()
{
    CriterionResult r{6, "torsion survives at the special degree (klein9, o36x125)", false, ""};
    Failure f;
    for (std::string name : {"klein9", "o36x125"}) {
        ExpandingEndo e = *findEndo(name);
        f(e.degree == specialDegree(e.manifold), name + ": not at the special degree");
        InvariantReport rep = computeReport(e);
        f(checkTorsion(rep).status == CheckStatus::Pass, name + ": torsion check failed");
        try {
            specialTransferOnTorsion(e);
        } catch (const std::exception& ex) {
            f(false, name + ": " + ex.what());
        }
    }
    ExpandingEndo o36 = *findEndo("o36x125");
    InvariantReport rep = computeReport(o36);
    f(rep.unstable_homology[1].torsion == FgAbGroup{0, {Int(4), Int(4)}},
      "o36x125: (Z/4)^2 did not survive in degree 1");
    r.pass = !f.failed;
    r.detail = f.failed ? f.msg.str() : "graded torsion preserved on both sides";
    return r;
}

CriterionResult putnamVerdicts()
{
    CriterionResult r{7, "Putnam-question verdicts (counterexample + duality matches)", false, ""};
    Failure f;
    for (const ExpandingEndo& e : builtinEndos()) {
        InvariantReport rep = computeReport(e);
        PutnamVerdict v = putnamQuestion(rep);
        if (e.manifold.orientable) {
            f(v.reflection_match.value_or(false), e.name + ": d-* duality match failed");
        } else {
            f(v.no_shift_works, e.name + ": expected 'no shift works'");
        }
    }
    r.pass = !f.failed;
    r.detail = f.failed ? f.msg.str() : "klein9: no shift works; orientable builtins match at d-*";
    return r;
}

CriterionResult lefschetzCrossCheck()
{
    CriterionResult r{8, "Lefschetz counts vs torus oracle and theorem bounds", false, ""};
    Failure f;

    for (std::string name : {"circle2", "circle3"}) {
        ExpandingEndo e = *findEndo(name);
        InvariantReport circle = computeReport(e);
        IntMat a = freeBlock(e.induced_homology[1]);
        for (unsigned k = 1; k <= 10; ++k) {
            PeriodicCount p = periodicPoints(circle, k);
            f(p.supported, name + ": periodic count unsupported");
            if (!p.supported) break;
            Int oracle = torusFixedPoints(a, k);
            f(p.count == oracle, name + ": k=" + std::to_string(k) + " engine " +
                                     toString(p.count) + " != oracle " + toString(oracle));
            f(p.count == ipow(e.degree, k) - 1, name + ": k=" + std::to_string(k) + " != n^k - 1");
        }
    }

    InvariantReport o36 = computeReport(*findEndo("o36x125"));
    for (unsigned k = 1; k <= 4; ++k) {
        PeriodicCount p = periodicPoints(o36, k);
        f(p.supported, "o36x125: periodic count unsupported");
        if (!p.supported) break;
        Int nk = ipow(125, k);
        f(p.count == nk - 1 || p.count == nk + 1,
          "o36x125: k=" + std::to_string(k) + " count " + toString(p.count) +
              " outside {n^k-1, n^k+1}");
    }
    r.pass = !f.failed;
    r.detail =
        f.failed ? f.msg.str() : "circle builtins match the oracle for k<=10; o36x125 within bounds";
    return r;
}

CriterionResult oracleEquivalence(int depth)
{
    CriterionResult r{9, "limit-oracle fingerprints (depth " + std::to_string(depth) +
                             ") + corruption controls",
                      false, ""};
    Failure f;
    for (const ExpandingEndo& e : builtinEndos()) {
        InvariantReport rep = computeReport(e);
        std::vector<Int> denoms = defaultDenominators(e.degree);
        std::vector<std::pair<std::string, const LimitGroup*>> pieces;
        for (int k = 0; k <= e.manifold.dim; ++k) {
            pieces.emplace_back("stable[" + std::to_string(k) + "]",
                                &rep.stable_homology[static_cast<size_t>(k)]);
            pieces.emplace_back("unstable[" + std::to_string(k) + "]",
                                &rep.unstable_homology[static_cast<size_t>(k)]);
            pieces.emplace_back("cech[" + std::to_string(k) + "]",
                                &rep.cech_x[static_cast<size_t>(k)]);
        }
        if (rep.stable_k && rep.unstable_k) {
            pieces.emplace_back("stable_k.even", &rep.stable_k->even);
            pieces.emplace_back("stable_k.odd", &rep.stable_k->odd);
            pieces.emplace_back("unstable_k.even", &rep.unstable_k->even);
            pieces.emplace_back("unstable_k.odd", &rep.unstable_k->odd);
        }
        for (const auto& [label, piece] : pieces) {
            LimitFingerprint fp = fingerprintLimit(piece->presentation, depth, denoms);
            f(checkCanonicalAgainstFingerprint(*piece, fp), e.name + " " + label +
                                                                ": fingerprint mismatch");
        }
    }

    // negative controls: corrupt a prime set, corrupt a torsion order
    InvariantReport klein = computeReport(*findEndo("klein9"));
    std::vector<Int> denoms = defaultDenominators(9);

    LimitGroup corruptPrimes = klein.cech_x[1]; // Z[1/3]
    corruptPrimes.free_part.scalars[0].primes = {Int(2)};
    corruptPrimes.free_part.scalars[0].raw = 2;
    LimitFingerprint fp1 = fingerprintLimit(corruptPrimes.presentation, depth, denoms);
    f(!checkCanonicalAgainstFingerprint(corruptPrimes, fp1),
      "corrupted prime set was not detected");

    LimitGroup corruptTorsion = klein.stable_homology[2]; // Z/2
    corruptTorsion.torsion = FgAbGroup{0, {Int(4)}};
    LimitFingerprint fp2 = fingerprintLimit(corruptTorsion.presentation, depth, denoms);
    f(!checkCanonicalAgainstFingerprint(corruptTorsion, fp2),
      "corrupted torsion was not detected");

    r.pass = !f.failed;
    r.detail = f.failed ? f.msg.str() : "all builtin pieces consistent; both corruptions detected";
    return r;
}

CriterionResult propertySuites()
{
    CriterionResult r{10, "property suites: 200 SNF instances, 100 stationary systems", false, ""};
    Failure f;
    std::mt19937_64 rng(0x5015e3u);

    // Smith normal form: U·A·V = D, unimodularity, divisibility chain
    std::uniform_int_distribution<int> dimDist(1, 5), entryDist(-20, 20);
    for (int trial = 0; trial < 200 && !f.failed; ++trial) {
        Index rows = dimDist(rng), cols = dimDist(rng);
        IntMat a(rows, cols);
        for (Index i = 0; i < rows; ++i)
            for (Index j = 0; j < cols; ++j) a(i, j) = entryDist(rng);

        SmithForm s = smithNormalForm(a);
        std::string tag = "SNF trial " + std::to_string(trial);
        f(IntMat(s.U * a * s.V) == s.D, tag + ": U·A·V != D");
        f(absInt(determinant(s.U)) == 1, tag + ": U not unimodular");
        f(absInt(determinant(s.V)) == 1, tag + ": V not unimodular");
        bool zeroSeen = false;
        for (Index i = 0; i < std::min(rows, cols); ++i) {
            for (Index j = 0; j < cols; ++j)
                f(i == j || s.D(i, j) == 0, tag + ": D not diagonal");
            const Int& di = s.D(i, i);
            f(di >= 0, tag + ": negative diagonal entry");
            if (di == 0) {
                zeroSeen = true;
            } else {
                f(!zeroSeen, tag + ": zero before a nonzero factor");
                if (i + 1 < std::min(rows, cols) && s.D(i + 1, i + 1) != 0)
                    f(s.D(i + 1, i + 1) % di == 0, tag + ": divisibility chain broken");
            }
        }
    }

    // stationary limits: lim(G, alpha) ≅ lim(G, alpha^2) for diagonal actions
    std::uniform_int_distribution<int> rankDist(0, 3), scalarDist(-6, 6), pickDist(0, 5),
        torsCountDist(0, 2);
    const Int pool[] = {Int(2), Int(3), Int(4), Int(6), Int(9), Int(12)};
    for (int trial = 0; trial < 100 && !f.failed; ++trial) {
        int freeRank = rankDist(rng);
        std::vector<Int> orders;
        int tc = torsCountDist(rng);
        for (int i = 0; i < tc; ++i) orders.push_back(pool[pickDist(rng)]);
        FgAbGroup g{freeRank, canonicalFactors(orders)};
        if (g.isTrivial()) continue;

        IntMat mat = IntMat::Zero(g.generatorCount(), g.generatorCount());
        for (int i = 0; i < freeRank; ++i) mat(i, i) = scalarDist(rng);
        for (int i = freeRank; i < g.generatorCount(); ++i) {
            long order = g.generatorOrder(i).convert_to<long>();
            std::uniform_int_distribution<long> td(0, order - 1);
            mat(i, i) = td(rng);
        }
        StationarySystem sys = makeSystem(g, mat);
        StationarySystem sq = makeSystem(compose(sys.endo, sys.endo));
        IsoAnswer a = limitsIsomorphic(stationaryLimit(sys), stationaryLimit(sq));
        f(a == IsoAnswer::Yes, "limit trial " + std::to_string(trial) +
                                   ": lim(G, a) != lim(G, a^2)");
    }

    r.pass = !f.failed;
    r.detail = f.failed ? f.msg.str() : "all randomized instances pass";
    return r;
}

} // namespace

std::vector<CriterionResult> runVerifySuite(int oracle_depth)
{
    std::vector<CriterionResult> results;
    results.push_back(kleinGolden());
    results.push_back(catalogIntegrity());
    results.push_back(degreeZeroAll());
    results.push_back(topDegreeAll());
    results.push_back(rationalAll());
    results.push_back(torsionSpecial());
    results.push_back(putnamVerdicts());
    results.push_back(lefschetzCrossCheck());
    results.push_back(oracleEquivalence(oracle_depth));
    results.push_back(propertySuites());
    return results;
}

bool allPassed(const std::vector<CriterionResult>& results)
{
    for (const CriterionResult& r : results)
        if (!r.pass) return false;
    return true;
}

std::string renderVerifyText(const std::vector<CriterionResult>& results)
{
    std::ostringstream out;
    for (const CriterionResult& r : results) {
        out << (r.pass ? "PASS" : "FAIL") << "  criterion " << r.number << ": " << r.title;
        if (!r.detail.empty()) out << " -- " << r.detail;
        out << "\n";
    }
    out << (allPassed(results) ? "verify: all criteria passed\n" : "verify: FAILURES present\n");
    return out.str();
}

std::string renderVerifyJson(const std::vector<CriterionResult>& results)
{
    nlohmann::ordered_json doc;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const CriterionResult& r : results) {
        arr.push_back({{"criterion", r.number},
                       {"title", r.title},
                       {"status", r.pass ? "pass" : "fail"},
                       {"detail", r.detail}});
    }
    doc["criteria"] = std::move(arr);
    doc["all_passed"] = allPassed(results);
    return doc.dump(2) + "\n";
}

} // namespace solinv
