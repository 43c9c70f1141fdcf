// solinv: invariants of solenoids over flat manifolds.
//
// Subcommands: list, show, compute, verify, periodic. See README.md.

#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "solinv/invariants.hpp"
#include "solinv/oracle.hpp"
#include "solinv/verify.hpp"

namespace {

using namespace solinv;
using json = nlohmann::ordered_json;

FlatManifold resolveManifold(const std::string& ref)
{
    if (std::filesystem::exists(ref)) return loadManifoldFile(ref);
    auto m = findManifold(ref);
    if (!m) throw std::runtime_error("unknown manifold '" + ref + "' (and no such file)");
    return *m;
}

ExpandingEndo resolveEndo(const std::string& ref)
{
    auto e = findEndo(ref);
    if (e) return *e;
    if (std::filesystem::exists(ref)) return loadEndoFile(ref);
    throw std::runtime_error("unknown endomorphism '" + ref + "' (and no such file)");
}

int runList(const std::string& format)
{
    if (format == "json") {
        json arr = json::array();
        for (const FlatManifold& m : catalog()) {
            json h = json::object();
            for (int k = 0; k <= m.dim; ++k) h[std::to_string(k)] = renderGroup(m.knownHomology(k));
            arr.push_back({{"name", m.name},
                           {"dim", m.dim},
                           {"orientable", m.orientable},
                           {"holonomy_order", toString(m.holonomy_order)},
                           {"homology", std::move(h)}});
        }
        json endos = json::array();
        for (const ExpandingEndo& e : builtinEndos())
            endos.push_back({{"name", e.name},
                             {"manifold", e.manifold.name},
                             {"degree", toString(e.degree)}});
        json doc;
        doc["manifolds"] = std::move(arr);
        doc["endos"] = std::move(endos);
        std::cout << doc.dump(2) << "\n";
        return 0;
    }

    std::cout << "manifolds:\n";
    for (const FlatManifold& m : catalog()) {
        std::cout << "  " << m.name << "  (dim " << m.dim << ", "
                  << (m.orientable ? "orientable" : "nonorientable") << ", |F| = "
                  << m.holonomy_order << ")  H_* = ";
        for (int k = 0; k <= m.dim; ++k) {
            if (k) std::cout << ", ";
            std::cout << renderGroup(m.knownHomology(k));
        }
        std::cout << "\n";
    }
    std::cout << "builtin endomorphisms:\n";
    for (const ExpandingEndo& e : builtinEndos())
        std::cout << "  " << e.name << "  (" << e.manifold.name << ", degree " << e.degree
                  << ")\n";
    return 0;
}

int runShow(const std::string& ref, const std::string& format)
{
    FlatManifold m = resolveManifold(ref);
    std::vector<std::string> bad = validate(m);
    std::vector<std::optional<FgAbGroup>> coh = cohomology(m);

    auto renderOpt = [](const std::optional<FgAbGroup>& g) {
        return g ? renderGroup(*g) : std::string("?");
    };

    if (format == "json") {
        json doc;
        doc["name"] = m.name;
        doc["dim"] = m.dim;
        doc["orientable"] = m.orientable;
        doc["holonomy_order"] = toString(m.holonomy_order);
        json h = json::object(), c = json::object();
        for (int k = 0; k <= m.dim; ++k) {
            h[std::to_string(k)] = renderOpt(m.homology[static_cast<size_t>(k)]);
            c[std::to_string(k)] = renderOpt(coh[static_cast<size_t>(k)]);
        }
        doc["homology"] = std::move(h);
        doc["cohomology"] = std::move(c);
        if (m.dim <= 3 && m.fullyKnown()) {
            auto [even, odd] = kGroupsLowDim(cohomologyKnown(m), m.dim);
            auto [heven, hodd] = kGroupsLowDim(
                [&] {
                    std::vector<FgAbGroup> h2;
                    for (int k = 0; k <= m.dim; ++k) h2.push_back(m.knownHomology(k));
                    return h2;
                }(),
                m.dim);
            doc["k_theory"] = {{"even", renderGroup(even)}, {"odd", renderGroup(odd)}};
            doc["k_homology"] = {{"even", renderGroup(heven)}, {"odd", renderGroup(hodd)}};
        }
        doc["violations"] = bad;
        std::cout << doc.dump(2) << "\n";
        return bad.empty() ? 0 : 1;
    }

    std::cout << renderManifoldText(m);
    std::cout << "cohomology:\n";
    for (int k = 0; k <= m.dim; ++k)
        std::cout << "  H^" << k << " = " << renderOpt(coh[static_cast<size_t>(k)]) << "\n";
    if (m.dim <= 3 && m.fullyKnown()) {
        auto [even, odd] = kGroupsLowDim(cohomologyKnown(m), m.dim);
        std::cout << "K-theory: K^0 = " << renderGroup(even) << ", K^1 = " << renderGroup(odd)
                  << "\n";
    } else if (m.dim > 3) {
        std::cout << "K-theory: unsupported for dim > 3\n";
    } else {
        std::cout << "K-theory: insufficient data\n";
    }
    if (!bad.empty()) {
        std::cout << "validation FAILED:\n";
        for (const std::string& b : bad) std::cout << "  - " << b << "\n";
        return 1;
    }
    std::cout << "validation: ok\n";
    return 0;
}

int runCompute(const std::string& ref, const std::string& format)
{
    ExpandingEndo e = resolveEndo(ref);
    InvariantReport r = computeReport(e);
    std::cout << (format == "json" ? renderReportJson(r) : renderReportText(r));
    return 0;
}

int runVerify(int depth, const std::string& format)
{
    std::vector<CriterionResult> results = runVerifySuite(depth);
    std::cout << (format == "json" ? renderVerifyJson(results) : renderVerifyText(results));
    return allPassed(results) ? 0 : 1;
}

std::pair<unsigned, unsigned> parseRange(const std::string& text)
{
    size_t dots = text.find("..");
    if (dots == std::string::npos) {
        unsigned k = static_cast<unsigned>(std::stoul(text));
        return {k, k};
    }
    unsigned lo = static_cast<unsigned>(std::stoul(text.substr(0, dots)));
    unsigned hi = static_cast<unsigned>(std::stoul(text.substr(dots + 2)));
    if (lo < 1 || hi < lo) throw std::runtime_error("bad k range '" + text + "'");
    return {lo, hi};
}

int runPeriodic(const std::string& ref, const std::string& krange, const std::string& format)
{
    ExpandingEndo e = resolveEndo(ref);
    InvariantReport r = computeReport(e);
    auto [lo, hi] = parseRange(krange);

    json arr = json::array();
    for (unsigned k = lo; k <= hi; ++k) {
        PeriodicCount p = periodicPoints(r, k);
        if (format == "json") {
            json row;
            row["k"] = k;
            if (p.supported) {
                row["count"] = toString(p.count);
                row["lefschetz_sum"] = toString(p.lefschetz_sum);
                if (p.bound_pair)
                    row["theorem_bound"] = {toString(p.bound_pair->first),
                                            toString(p.bound_pair->second)};
            } else {
                row["error"] = p.reason;
            }
            arr.push_back(std::move(row));
        } else {
            std::cout << "Per_" << k << ": ";
            if (!p.supported) {
                std::cout << p.reason << "\n";
                continue;
            }
            std::cout << p.count;
            if (p.bound_pair)
                std::cout << "   theorem bound {" << p.bound_pair->first << ", "
                          << p.bound_pair->second << "}";
            std::cout << "\n";
        }
    }
    if (format == "json") {
        json doc;
        doc["endo"] = e.name;
        doc["degree"] = toString(e.degree);
        doc["periodic_points"] = std::move(arr);
        std::cout << doc.dump(2) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"solinv: exact invariants of solenoids over flat manifolds"};
    app.require_subcommand(1);

    std::string format = "text";
    std::string manifoldRef, endoRef, krange = "1..4";
    int depth = 8;

    CLI::App* list = app.add_subcommand("list", "list the manifold catalog and builtin endomorphisms");
    list->add_option("--format", format, "text or json");

    CLI::App* show = app.add_subcommand("show", "print one manifold with homology, cohomology and K-groups");
    show->add_option("--manifold", manifoldRef, "catalog name, HW<d>, or definition file")->required();
    show->add_option("--format", format, "text or json");

    CLI::App* compute = app.add_subcommand("compute", "compute the full invariant report for an endomorphism");
    compute->add_option("--endo", endoRef, "builtin name or definition file")->required();
    compute->add_option("--format", format, "text or json");

    CLI::App* verify = app.add_subcommand("verify", "run the theorem-check and oracle suites; exit 0 iff all pass");
    verify->add_option("--depth", depth, "oracle fingerprint depth (default 8)");
    verify->add_option("--format", format, "text or json");

    CLI::App* periodic = app.add_subcommand("periodic", "Lefschetz periodic-point counts Per_k");
    periodic->add_option("--endo", endoRef, "builtin name or definition file")->required();
    periodic->add_option("--k", krange, "k or lo..hi (default 1..4)");
    periodic->add_option("--format", format, "text or json");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list->parsed()) return runList(format);
        if (show->parsed()) return runShow(manifoldRef, format);
        if (compute->parsed()) return runCompute(endoRef, format);
        if (verify->parsed()) return runVerify(depth, format);
        if (periodic->parsed()) return runPeriodic(endoRef, krange, format);
    } catch (const solinv::EndoValidationError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        for (const std::string& v : ex.violations) std::cerr << "  - " << v << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}
