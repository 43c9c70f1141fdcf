#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include "solinv/invariants.hpp"

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

CheckStatus statusOf(const InvariantReport& r, const std::string& name)
{
    for (const CheckOutcome& c : r.notes)
        if (c.name == name) return c.status;
    throw std::logic_error("check not found: " + name);
}

} // namespace

TEST_CASE("Klein nine-fold report reproduces the known gradeds")
{
    InvariantReport r = computeReport(*findEndo("klein9"));
    CHECK(renderLimit(r.stable_homology[0]) == "Z[1/3]");
    CHECK(renderLimitDecorated(r.stable_homology[0]) == "Z[1/3] (= Z[1/9])");
    CHECK(renderLimit(r.stable_homology[1]) == "Z[1/3]");
    CHECK(renderLimit(r.stable_homology[2]) == "Z/2");
    CHECK(renderLimit(r.unstable_homology[0]) == "Z[1/3]");
    CHECK(renderLimit(r.unstable_homology[1]) == "Z[1/3] (+) Z/2");
    CHECK(renderLimit(r.unstable_homology[2]) == "0");
    CHECK(renderLimit(r.cech_x[0]) == "Z");
    CHECK(renderLimit(r.cech_x[1]) == "Z[1/3]");
    CHECK(renderLimit(r.cech_x[2]) == "Z/2");

    REQUIRE(r.stable_k);
    CHECK(renderLimit(r.stable_k->even) == "Z[1/3] (+) Z/2");
    CHECK(renderLimit(r.stable_k->odd) == "Z[1/3]");
    REQUIRE(r.unstable_k);
    CHECK(renderLimit(r.unstable_k->even) == "Z[1/3]");
    CHECK(renderLimit(r.unstable_k->odd) == "Z[1/3] (+) Z/2");
}

TEST_CASE("circle and torus reports")
{
    InvariantReport c2 = computeReport(*findEndo("circle2"));
    CHECK(renderLimit(c2.stable_homology[0]) == "Z[1/2]");
    CHECK(renderLimit(c2.stable_homology[1]) == "Z");
    CHECK(renderLimit(c2.unstable_homology[0]) == "Z[1/2]");
    CHECK(renderLimit(c2.unstable_homology[1]) == "Z");

    InvariantReport t = computeReport(*findEndo("torus23"));
    CHECK(renderLimit(t.unstable_homology[0]) == "Z[1/6]");
    CHECK(renderLimit(t.unstable_homology[1]) == "Z[1/2] (+) Z[1/3]");
    CHECK(renderLimit(t.unstable_homology[2]) == "Z");
    CHECK(renderLimit(t.cech_x[1]) == "Z[1/2] (+) Z[1/3]");
    CHECK(renderLimit(t.cech_x[2]) == "Z[1/6]");
}

TEST_CASE("Hantzsche-Wendt example at the special degree")
{
    InvariantReport r = computeReport(*findEndo("o36x125"));
    CHECK(renderLimit(r.unstable_homology[0]) == "Z[1/5]");
    CHECK(renderLimit(r.unstable_homology[1]) == "Z/4 (+) Z/4");
    CHECK(renderLimit(r.unstable_homology[2]) == "0");
    CHECK(renderLimit(r.unstable_homology[3]) == "Z");
    CHECK(renderLimit(r.stable_homology[2]) == "Z/4 (+) Z/4");
}

TEST_CASE("theorem checks over the builtins")
{
    for (const ExpandingEndo& e : builtinEndos()) {
        InvariantReport r = computeReport(e);
        INFO(e.name);
        CHECK(statusOf(r, "degree_zero") == CheckStatus::Pass);
        CHECK(statusOf(r, "top_degree") == CheckStatus::Pass);
        CHECK(statusOf(r, "rational") == CheckStatus::Pass);
        if (e.name == "klein9" || e.name == "o36x125" || e.name == "circle2")
            CHECK(statusOf(r, "torsion") == CheckStatus::Pass);
        else
            CHECK(statusOf(r, "torsion") == CheckStatus::Skip);
        if (e.manifold.orientable) {
            CHECK(statusOf(r, "putnam") == CheckStatus::Pass);
            CHECK(statusOf(r, "stable_shifted") == CheckStatus::Pass);
        } else {
            CHECK(statusOf(r, "putnam") == CheckStatus::Skip);
            CHECK(statusOf(r, "stable_shifted") == CheckStatus::Skip);
        }
    }
}

TEST_CASE("Putnam verdicts")
{
    InvariantReport klein = computeReport(*findEndo("klein9"));
    PutnamVerdict v = putnamQuestion(klein);
    CHECK(v.no_shift_works);
    CHECK_FALSE(v.unknown);
    CHECK_FALSE(v.shift.has_value());

    for (std::string name : {"circle2", "torus23", "o36x125"}) {
        InvariantReport r = computeReport(*findEndo(name));
        PutnamVerdict w = putnamQuestion(r);
        INFO(name);
        REQUIRE(w.reflection_match.has_value());
        CHECK(*w.reflection_match);
    }
}

TEST_CASE("shifted stable forms match the transfer pipeline")
{
    InvariantReport o36 = computeReport(*findEndo("o36x125"));
    ShiftedForms forms = stableShiftedForms(o36);
    REQUIRE(forms.homology_form.size() == 4);
    for (int j = 0; j <= 3; ++j)
        CHECK(limitsIsomorphic(forms.homology_form[static_cast<size_t>(j)],
                               o36.stable_homology[static_cast<size_t>(j)]) == IsoAnswer::Yes);
    REQUIRE(forms.k_form);
    CHECK(limitsIsomorphic(forms.k_form->even, o36.stable_k->even) == IsoAnswer::Yes);

    // circle: lim(H_{*-1}, g_*) = (Z, Z[1/2]) against stable (Z[1/2], Z)
    InvariantReport c2 = computeReport(*findEndo("circle2"));
    ShiftedForms cf = stableShiftedForms(c2);
    CHECK(renderLimit(cf.homology_form[0]) == "Z[1/2]");
    CHECK(renderLimit(cf.homology_form[1]) == "Z");

    InvariantReport klein = computeReport(*findEndo("klein9"));
    CHECK_THROWS_AS(stableShiftedForms(klein), std::invalid_argument);
}

TEST_CASE("periodic point counts")
{
    InvariantReport c2 = computeReport(*findEndo("circle2"));
    PeriodicCount p3 = periodicPoints(c2, 3);
    REQUIRE(p3.supported);
    CHECK(p3.count == 7);
    REQUIRE(p3.bound_pair);
    CHECK(p3.bound_pair->first == 7);
    CHECK(p3.bound_pair->second == 9);

    InvariantReport o36 = computeReport(*findEndo("o36x125"));
    PeriodicCount q = periodicPoints(o36, 1);
    REQUIRE(q.supported);
    CHECK(q.count == 124); // stored top sign +1 picks n - 1

    InvariantReport torus = computeReport(*findEndo("torus23"));
    PeriodicCount u = periodicPoints(torus, 1);
    CHECK_FALSE(u.supported);
    CHECK(u.reason.find("insufficient data") != std::string::npos);

    // negation of the top class flips the count to n^k + 1 for odd k
    ExpandingEndo neg = circleEndo(2);
    FgAbGroup h1 = neg.manifold.knownHomology(1);
    neg.induced_homology[1] = makeHom(h1, h1, mat({{-2}}));
    neg.top_sign = -1;
    PeriodicCount pm = periodicPoints(neg, 1);
    REQUIRE(pm.supported);
    CHECK(pm.count == 3);
}

TEST_CASE("invalid endomorphisms are rejected with their violations")
{
    ExpandingEndo bad = *findEndo("torus23");
    bad.degree = 5;
    try {
        computeReport(bad);
        FAIL("expected EndoValidationError");
    } catch (const EndoValidationError& ex) {
        CHECK_FALSE(ex.violations.empty());
    }
}

TEST_CASE("dimension-4 manifolds compute but refuse K-theory")
{
    FlatManifold t4 = makeManifold(
        "T4", 4, true, 1,
        {parseGroup("Z"), parseGroup("Z^4"), parseGroup("Z^6"), parseGroup("Z^4"),
         parseGroup("Z")});
    REQUIRE(validate(t4).empty());

    ExpandingEndo e;
    e.name = "t4x2";
    e.manifold = t4;
    e.degree = 16; // doubling map: det(2·I_4)
    const int blocks[] = {1, 4, 6, 4, 1};
    for (int k = 0; k <= 4; ++k) {
        Index n = blocks[k];
        IntMat m = IntMat::Identity(n, n);
        for (Index i = 0; i < n; ++i) m(i, i) = ipow(2, static_cast<unsigned>(k));
        const FgAbGroup& h = t4.knownHomology(k);
        e.induced_homology.push_back(makeHom(h, h, m));
    }

    InvariantReport r = computeReport(e);
    CHECK_FALSE(r.stable_k.has_value());
    CHECK_FALSE(r.unstable_k.has_value());
    CHECK(renderLimit(r.unstable_homology[0]) == "Z[1/2]");
    CHECK(renderLimit(r.unstable_homology[2]) == "Z[1/2]^6");
    CHECK(renderLimit(r.unstable_homology[4]) == "Z");
    CHECK(statusOf(r, "degree_zero") == CheckStatus::Pass);
    CHECK(statusOf(r, "rational") == CheckStatus::Pass);
    CHECK(statusOf(r, "putnam") == CheckStatus::Pass);
    CHECK(renderReportText(r).find("unsupported for dim > 3") != std::string::npos);
}

TEST_CASE("machine-readable reports round-trip byte-identically")
{
    for (const ExpandingEndo& e : builtinEndos()) {
        std::string text = renderReportJson(computeReport(e));
        nlohmann::ordered_json parsed = nlohmann::ordered_json::parse(text);
        CHECK(parsed.dump(2) + "\n" == text);
        CHECK(parsed.contains("manifold"));
        CHECK(parsed.contains("degree"));
        CHECK(parsed.contains("gradeds"));
        CHECK(parsed.contains("checks"));
    }
}
