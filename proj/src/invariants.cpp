#include "solinv/invariants.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace solinv {

std::string toString(CheckStatus s)
{
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Skip: return "skip";
        case CheckStatus::Unknown: return "unknown";
    }
    return "unknown";
}

namespace {

std::vector<FgAbGroup> homologyGroups(const FlatManifold& m)
{
    std::vector<FgAbGroup> h;
    for (int k = 0; k <= m.dim; ++k) h.push_back(m.knownHomology(k));
    return h;
}

// block-diagonal self-map on the canonical direct sum of the given degrees
GroupHom blockSystem(const std::vector<GroupHom>& perDegree, const std::vector<int>& degrees)
{
    GroupHom acc = perDegree[static_cast<size_t>(degrees[0])];
    for (size_t i = 1; i < degrees.size(); ++i)
        acc = homDirectSum(acc, perDegree[static_cast<size_t>(degrees[i])]);
    return acc;
}

std::vector<int> parityDegrees(int d, int parity)
{
    std::vector<int> out;
    for (int k = parity; k <= d; k += 2) out.push_back(k);
    return out;
}

bool limitIsZ(const LimitGroup& l)
{
    return l.isCanonical() && l.torsion.isTrivial() && l.rank() == 1 &&
           l.free_part.scalars[0].primes.empty();
}

bool limitIsZInvert(const LimitGroup& l, const std::vector<Int>& primes)
{
    return l.isCanonical() && l.torsion.isTrivial() && l.rank() == 1 &&
           l.free_part.scalars[0].primes == primes;
}

bool hasSummandWithPrimes(const LimitGroup& l, const std::vector<Int>& primes)
{
    if (!l.isCanonical()) return false;
    for (const auto& sc : l.free_part.scalars)
        if (sc.primes == primes) return true;
    return false;
}

} // namespace

InvariantReport computeReport(const ExpandingEndo& e)
{
    std::vector<std::string> bad = validateEndo(e);
    if (!bad.empty()) {
        std::string msg = "endomorphism '" + e.name + "' failed validation";
        throw EndoValidationError(msg, bad);
    }

    InvariantReport r;
    r.endo = e;
    const FlatManifold& m = e.manifold;
    const int d = m.dim;

    std::vector<FgAbGroup> h = homologyGroups(m);
    std::vector<GroupHom> gcoh = inducedCohomology(e);
    TransferData transfer = deriveTransfer(e);

    for (int k = 0; k <= d; ++k) {
        r.unstable_homology.push_back(
            stationaryLimit(makeSystem(transfer.transfer_homology[static_cast<size_t>(k)])));
        r.stable_homology.push_back(
            stationaryLimit(makeSystem(transfer.transfer_cohomology[static_cast<size_t>(k)])));
        r.cech_x.push_back(stationaryLimit(makeSystem(gcoh[static_cast<size_t>(k)])));
    }

    if (d <= 3) {
        std::vector<int> even = parityDegrees(d, 0), odd = parityDegrees(d, 1);
        KPair stableK{stationaryLimit(makeSystem(blockSystem(transfer.transfer_cohomology, even))),
                      stationaryLimit(makeSystem(blockSystem(transfer.transfer_cohomology, odd)))};
        KPair unstableK{stationaryLimit(makeSystem(blockSystem(transfer.transfer_homology, even))),
                        stationaryLimit(makeSystem(blockSystem(transfer.transfer_homology, odd)))};
        r.stable_k = std::move(stableK);
        r.unstable_k = std::move(unstableK);
    }

    r.notes.push_back(checkDegreeZero(r));
    r.notes.push_back(checkTopDegree(r));
    r.notes.push_back(checkRational(r));
    r.notes.push_back(checkTorsion(r));
    r.notes.push_back(checkPutnam(r));
    r.notes.push_back(checkStableShiftedForms(r));
    return r;
}

CheckOutcome checkDegreeZero(const InvariantReport& r)
{
    CheckOutcome c{"degree_zero", CheckStatus::Pass, "zero-degree-limits", ""};
    std::vector<Int> expected = primeFactors(r.endo.degree);

    bool ok = limitIsZInvert(r.stable_homology[0], expected) &&
              limitIsZInvert(r.unstable_homology[0], expected);
    std::ostringstream detail;
    detail << "both degree-0 limits = " << renderLimit(r.unstable_homology[0]);
    if (r.stable_k && r.unstable_k) {
        bool inK = hasSummandWithPrimes(r.stable_k->even, expected) &&
                   hasSummandWithPrimes(r.unstable_k->even, expected);
        ok = ok && inK;
        detail << "; even K-groups contain a Z[1/n] summand";
    }
    c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
    c.detail = detail.str();
    return c;
}

CheckOutcome checkTopDegree(const InvariantReport& r)
{
    CheckOutcome c{"top_degree", CheckStatus::Pass, "top-degree-limits", ""};
    const int d = r.endo.manifold.dim;
    if (r.endo.manifold.orientable) {
        bool ok = limitIsZ(r.stable_homology[static_cast<size_t>(d)]) &&
                  limitIsZ(r.unstable_homology[static_cast<size_t>(d)]);
        c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
        c.detail = "orientable: degree-" + std::to_string(d) + " limits = Z on both sides";
    } else {
        bool ok = r.unstable_homology[static_cast<size_t>(d)].isTrivial();
        c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
        c.detail = "nonorientable: unstable degree-" + std::to_string(d) + " limit = 0, stable = " +
                   renderLimit(r.stable_homology[static_cast<size_t>(d)]);
    }
    return c;
}

CheckOutcome checkRational(const InvariantReport& r)
{
    CheckOutcome c{"rational", CheckStatus::Pass, "rational-rank", ""};
    const FlatManifold& m = r.endo.manifold;
    std::vector<FgAbGroup> h = homologyGroups(m);
    std::vector<FgAbGroup> coh = cohomologyKnown(m);

    bool ok = true;
    Int alternating = 0;
    for (int k = 0; k <= m.dim; ++k) {
        int ru = r.unstable_homology[static_cast<size_t>(k)].rank();
        int rs = r.stable_homology[static_cast<size_t>(k)].rank();
        ok = ok && ru == h[static_cast<size_t>(k)].free_rank;
        ok = ok && rs == coh[static_cast<size_t>(k)].free_rank;
        alternating += (k % 2 == 0 ? 1 : -1) * Int(ru);
    }
    ok = ok && alternating == 0;
    c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
    c.detail = "limit ranks match Betti numbers; alternating sum " + toString(alternating);
    return c;
}

CheckOutcome checkTorsion(const InvariantReport& r)
{
    CheckOutcome c{"torsion", CheckStatus::Pass, "torsion-at-special-degree", ""};
    const FlatManifold& m = r.endo.manifold;
    Int special = specialDegree(m);
    if (r.endo.degree != special) {
        c.status = CheckStatus::Skip;
        c.detail = "degree " + toString(r.endo.degree) + " is not the special degree " +
                   toString(special);
        return c;
    }

    std::vector<FgAbGroup> h = homologyGroups(m);
    std::vector<FgAbGroup> coh = cohomologyKnown(m);
    bool ok = true;
    for (int k = 0; k <= m.dim; ++k) {
        ok = ok && r.unstable_homology[static_cast<size_t>(k)].torsion ==
                       torsionSubgroup(h[static_cast<size_t>(k)]);
        ok = ok && r.stable_homology[static_cast<size_t>(k)].torsion ==
                       torsionSubgroup(coh[static_cast<size_t>(k)]);
    }
    c.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
    c.detail = "graded torsion of the limits equals the torsion of H_*(Y) and H^*(Y)";
    return c;
}

PutnamVerdict putnamQuestion(const InvariantReport& r)
{
    PutnamVerdict v;
    const int d = r.endo.manifold.dim;
    const LimitGroup zero = trivialLimit();

    auto pieceAt = [&](const std::vector<LimitGroup>& graded, int j) -> const LimitGroup& {
        if (j < 0 || j > d) return zero;
        return graded[static_cast<size_t>(j)];
    };

    bool anyUnknown = false;
    for (int shift = -d; shift <= d && !v.shift; ++shift) {
        bool match = true, unknown = false;
        // compare over every degree where either side can be nonzero
        for (int j = -d; j <= 2 * d; ++j) {
            IsoAnswer a = limitsIsomorphic(pieceAt(r.cech_x, j), pieceAt(r.unstable_homology, j - shift));
            if (a == IsoAnswer::No) { match = false; break; }
            if (a == IsoAnswer::Unknown) unknown = true;
        }
        if (match && !unknown) v.shift = shift;
        if (match && unknown) anyUnknown = true;
    }
    if (!v.shift) {
        if (anyUnknown)
            v.unknown = true;
        else
            v.no_shift_works = true;
    }

    if (r.endo.manifold.orientable) {
        bool match = true;
        for (int j = 0; j <= d; ++j) {
            IsoAnswer a = limitsIsomorphic(pieceAt(r.cech_x, j), pieceAt(r.unstable_homology, d - j));
            if (a == IsoAnswer::Unknown) { v.unknown = true; match = false; break; }
            if (a == IsoAnswer::No) { match = false; break; }
        }
        v.reflection_match = match;
    }
    return v;
}

PutnamVerdict putnamQuestion(const ExpandingEndo& e) { return putnamQuestion(computeReport(e)); }

CheckOutcome checkPutnam(const InvariantReport& r)
{
    CheckOutcome c{"putnam", CheckStatus::Pass, "shift-vs-duality", ""};
    PutnamVerdict v = putnamQuestion(r);

    std::ostringstream detail;
    if (v.shift)
        detail << "shift k=" << *v.shift << " works";
    else if (v.unknown)
        detail << "shift search inconclusive (opaque piece)";
    else
        detail << "no shift works";

    if (r.endo.manifold.orientable) {
        bool refl = v.reflection_match.value_or(false);
        detail << "; d-* duality match: " << (refl ? "yes" : "no");
        c.status = v.unknown ? CheckStatus::Unknown : (refl ? CheckStatus::Pass : CheckStatus::Fail);
    } else {
        c.status = v.unknown ? CheckStatus::Unknown : CheckStatus::Skip;
        detail << "; duality statement needs orientability";
    }
    c.detail = detail.str();
    return c;
}

ShiftedForms stableShiftedForms(const InvariantReport& r)
{
    const FlatManifold& m = r.endo.manifold;
    if (!m.orientable)
        throw std::invalid_argument("stableShiftedForms: manifold must be orientable");

    ShiftedForms forms;
    const int d = m.dim;
    for (int j = 0; j <= d; ++j) {
        forms.homology_form.push_back(
            stationaryLimit(makeSystem(r.endo.induced_homology[static_cast<size_t>(d - j)])));
    }
    if (r.endo.spinc && d <= 3) {
        // K_{*-d}(Y) under g_*: parity flips when d is odd
        KPair k{stationaryLimit(makeSystem(blockSystem(r.endo.induced_homology,
                                                       parityDegrees(d, d % 2)))),
                stationaryLimit(makeSystem(blockSystem(r.endo.induced_homology,
                                                       parityDegrees(d, (1 + d) % 2))))};
        forms.k_form = std::move(k);
    }
    return forms;
}

CheckOutcome checkStableShiftedForms(const InvariantReport& r)
{
    CheckOutcome c{"stable_shifted", CheckStatus::Pass, "induced-map-forms", ""};
    const FlatManifold& m = r.endo.manifold;
    if (!m.orientable) {
        c.status = CheckStatus::Skip;
        c.detail = "manifold not orientable";
        return c;
    }

    ShiftedForms forms = stableShiftedForms(r);
    bool ok = true, unknown = false;
    for (int j = 0; j <= m.dim; ++j) {
        IsoAnswer a = limitsIsomorphic(forms.homology_form[static_cast<size_t>(j)],
                                       r.stable_homology[static_cast<size_t>(j)]);
        if (a == IsoAnswer::No) ok = false;
        if (a == IsoAnswer::Unknown) unknown = true;
    }
    std::ostringstream detail;
    detail << "lim(H_{d-*}(Y), g_*) matches the stable homology";

    if (forms.k_form && r.stable_k) {
        IsoAnswer even = limitsIsomorphic(forms.k_form->even, r.stable_k->even);
        IsoAnswer odd = limitsIsomorphic(forms.k_form->odd, r.stable_k->odd);
        if (even == IsoAnswer::No || odd == IsoAnswer::No) ok = false;
        if (even == IsoAnswer::Unknown || odd == IsoAnswer::Unknown) unknown = true;
        detail << "; K-theory form checked (spin^c asserted)";
    }
    c.status = unknown ? CheckStatus::Unknown : (ok ? CheckStatus::Pass : CheckStatus::Fail);
    c.detail = detail.str();
    return c;
}

PeriodicCount periodicPoints(const InvariantReport& r, unsigned k)
{
    PeriodicCount p;
    if (k < 1) throw std::invalid_argument("periodicPoints: k must be >= 1");
    const FlatManifold& m = r.endo.manifold;
    const int d = m.dim;

    for (int i = 1; i < d; ++i) {
        if (r.unstable_homology[static_cast<size_t>(i)].rank() != 0) {
            p.supported = false;
            p.reason = "insufficient data: unstable homology has rank " +
                       std::to_string(r.unstable_homology[static_cast<size_t>(i)].rank()) +
                       " in intermediate degree " + std::to_string(i) +
                       ", where the induced map is not pinned down";
            return p;
        }
    }

    Int sum = 0;
    for (int i = 0; i <= d; ++i) {
        Int tr = inducedTrace(r.unstable_homology[static_cast<size_t>(i)].presentation, k);
        sum += (i % 2 == 0 ? tr : Int(-tr));
    }
    p.supported = true;
    p.lefschetz_sum = sum;
    p.count = absInt(sum);
    if (m.orientable && d % 2 == 1) {
        Int nk = ipow(r.endo.degree, k);
        p.bound_pair = std::make_pair(Int(nk - 1), Int(nk + 1));
    }
    return p;
}

PeriodicCount periodicPoints(const ExpandingEndo& e, unsigned k)
{
    return periodicPoints(computeReport(e), k);
}

std::string renderReportText(const InvariantReport& r)
{
    const FlatManifold& m = r.endo.manifold;
    std::ostringstream out;
    out << "endomorphism: " << r.endo.name << "\n";
    out << "manifold: " << m.name << " (dim " << m.dim << ", "
        << (m.orientable ? "orientable" : "nonorientable") << ", |F| = " << m.holonomy_order
        << ")\n";
    out << "degree: " << r.endo.degree << "\n\n";

    auto graded = [&](const std::string& title, const std::vector<LimitGroup>& g) {
        out << title << ":\n";
        for (int k = 0; k <= m.dim; ++k)
            out << "  degree " << k << ": " << renderLimitDecorated(g[static_cast<size_t>(k)])
                << "\n";
    };
    graded("stable homology  H_*(G^s)", r.stable_homology);
    graded("unstable homology  H_*(G^u)", r.unstable_homology);
    graded("Cech cohomology  H^*(X)", r.cech_x);

    if (r.stable_k && r.unstable_k) {
        out << "stable K-theory  K_*(C*(G^s)):\n";
        out << "  even: " << renderLimitDecorated(r.stable_k->even) << "\n";
        out << "  odd:  " << renderLimitDecorated(r.stable_k->odd) << "\n";
        out << "unstable K-theory  K_*(C*(G^u)):\n";
        out << "  even: " << renderLimitDecorated(r.unstable_k->even) << "\n";
        out << "  odd:  " << renderLimitDecorated(r.unstable_k->odd) << "\n";
    } else {
        out << "K-theory: unsupported for dim > 3\n";
    }

    out << "\nchecks:\n";
    for (const CheckOutcome& c : r.notes) {
        out << "  [" << toString(c.status) << "] " << c.name << " (" << c.anchor << ")";
        if (!c.detail.empty()) out << ": " << c.detail;
        out << "\n";
    }
    return out.str();
}

std::string renderReportJson(const InvariantReport& r)
{
    using json = nlohmann::ordered_json;
    const FlatManifold& m = r.endo.manifold;

    json doc;
    doc["endo"] = r.endo.name;
    doc["manifold"] = m.name;
    doc["dim"] = m.dim;
    doc["degree"] = toString(r.endo.degree);

    auto gradedJson = [&](const std::vector<LimitGroup>& g) {
        json j = json::object();
        for (int k = 0; k <= m.dim; ++k)
            j[std::to_string(k)] = renderLimit(g[static_cast<size_t>(k)]);
        return j;
    };
    json gradeds;
    gradeds["stable_homology"] = gradedJson(r.stable_homology);
    gradeds["unstable_homology"] = gradedJson(r.unstable_homology);
    gradeds["cech_x"] = gradedJson(r.cech_x);
    if (r.stable_k && r.unstable_k) {
        gradeds["stable_k"] = {{"even", renderLimit(r.stable_k->even)},
                               {"odd", renderLimit(r.stable_k->odd)}};
        gradeds["unstable_k"] = {{"even", renderLimit(r.unstable_k->even)},
                                 {"odd", renderLimit(r.unstable_k->odd)}};
    }
    doc["gradeds"] = std::move(gradeds);

    json checks = json::array();
    for (const CheckOutcome& c : r.notes) {
        checks.push_back({{"name", c.name},
                          {"status", toString(c.status)},
                          {"anchor", c.anchor},
                          {"detail", c.detail}});
    }
    doc["checks"] = std::move(checks);
    return doc.dump(2) + "\n";
}

} // namespace solinv
