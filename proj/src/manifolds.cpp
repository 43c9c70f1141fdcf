#include "solinv/manifolds.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace solinv {

bool FlatManifold::fullyKnown() const
{
    for (const auto& h : homology)
        if (!h) return false;
    return true;
}

const FgAbGroup& FlatManifold::knownHomology(int k) const
{
    if (k < 0 || k > dim) throw std::out_of_range("knownHomology: degree out of range");
    const auto& h = homology[static_cast<size_t>(k)];
    if (!h) throw std::runtime_error("insufficient data: H_" + std::to_string(k) + " of " + name +
                                     " is not specified");
    return *h;
}

FlatManifold makeManifold(const std::string& name, int dim, bool orientable,
                          const Int& holonomy, std::vector<FgAbGroup> homology)
{
    FlatManifold m;
    m.name = name;
    m.dim = dim;
    m.orientable = orientable;
    m.holonomy_order = holonomy;
    m.homology.reserve(homology.size());
    for (auto& h : homology) m.homology.emplace_back(std::move(h));
    if (static_cast<int>(m.homology.size()) != dim + 1)
        throw std::invalid_argument("makeManifold: need homology in degrees 0..dim");
    return m;
}

namespace {

std::vector<FlatManifold> buildCatalog()
{
    auto G = [](const std::string& s) { return parseGroup(s); };
    std::vector<FlatManifold> c;

    c.push_back(makeManifold("S1", 1, true, 1, {G("Z"), G("Z")}));
    c.push_back(makeManifold("T2", 2, true, 1, {G("Z"), G("Z^2"), G("Z")}));
    c.push_back(makeManifold("Klein", 2, false, 2, {G("Z"), G("Z (+) Z/2"), G("0")}));

    // the ten flat 3-manifolds; O3_1 is the 3-torus
    c.push_back(makeManifold("O3_1", 3, true, 1, {G("Z"), G("Z^3"), G("Z^3"), G("Z")}));
    c.push_back(makeManifold("O3_2", 3, true, 2, {G("Z"), G("Z (+) Z/2 (+) Z/2"), G("Z"), G("Z")}));
    c.push_back(makeManifold("O3_3", 3, true, 3, {G("Z"), G("Z (+) Z/3"), G("Z"), G("Z")}));
    c.push_back(makeManifold("O3_4", 3, true, 4, {G("Z"), G("Z (+) Z/2"), G("Z"), G("Z")}));
    c.push_back(makeManifold("O3_5", 3, true, 6, {G("Z"), G("Z"), G("Z"), G("Z")}));
    c.push_back(makeManifold("O3_6", 3, true, 4, {G("Z"), G("Z/4 (+) Z/4"), G("0"), G("Z")}));
    c.push_back(makeManifold("N3_1", 3, false, 2, {G("Z"), G("Z^2 (+) Z/2"), G("Z (+) Z/2"), G("0")}));
    c.push_back(makeManifold("N3_2", 3, false, 2, {G("Z"), G("Z^2"), G("Z (+) Z/2"), G("0")}));
    c.push_back(makeManifold("N3_3", 3, false, 4, {G("Z"), G("Z (+) Z/2 (+) Z/2"), G("Z/2"), G("0")}));
    c.push_back(makeManifold("N3_4", 3, false, 4, {G("Z"), G("Z (+) Z/4"), G("Z/2"), G("0")}));
    return c;
}

std::string lowercase(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    return s;
}

} // namespace

const std::vector<FlatManifold>& catalog()
{
    static const std::vector<FlatManifold> c = buildCatalog();
    return c;
}

std::optional<FlatManifold> findManifold(const std::string& name)
{
    std::string key = lowercase(name);
    if (key == "t3" || key == "torus3") key = "o3_1";
    if (key == "k2" || key == "klein bottle") key = "klein";
    if (key == "t2" || key == "torus") key = "t2";
    if (key == "circle") key = "s1";
    for (const FlatManifold& m : catalog())
        if (lowercase(m.name) == key) return m;
    if (key.rfind("hw", 0) == 0 && key.size() > 2 &&
        std::all_of(key.begin() + 2, key.end(),
                    [](unsigned char c) { return std::isdigit(c); })) {
        return hantzscheWendtTemplate(std::stoi(key.substr(2)));
    }
    return std::nullopt;
}

std::vector<std::string> validate(const FlatManifold& m)
{
    std::vector<std::string> bad;
    if (m.dim < 1) bad.push_back("dimension must be at least 1");
    if (static_cast<int>(m.homology.size()) != m.dim + 1) {
        bad.push_back("homology must cover degrees 0..dim");
        return bad;
    }
    if (m.holonomy_order < 1) bad.push_back("holonomy order must be at least 1");

    const auto& h0 = m.homology[0];
    if (!h0) {
        bad.push_back("H_0 must be specified");
    } else if (*h0 != groupZ(1)) {
        bad.push_back("H_0 = " + renderGroup(*h0) + " but a connected manifold needs H_0 = Z");
    }

    const auto& top = m.homology[static_cast<size_t>(m.dim)];
    if (top) {
        if (m.orientable && *top != groupZ(1))
            bad.push_back("orientable manifold needs H_" + std::to_string(m.dim) + " = Z, got " +
                          renderGroup(*top));
        if (!m.orientable && !top->isTrivial())
            bad.push_back("nonorientable manifold needs H_" + std::to_string(m.dim) + " = 0, got " +
                          renderGroup(*top));
    }

    auto checkTorsion = [&](const FgAbGroup& g, const std::string& label) {
        for (const Int& t : g.torsion) {
            if (m.holonomy_order % t != 0)
                bad.push_back(label + " has torsion of order " + toString(t) +
                              ", which does not divide the holonomy order " +
                              toString(m.holonomy_order));
        }
    };
    for (int k = 0; k <= m.dim; ++k) {
        if (m.homology[static_cast<size_t>(k)])
            checkTorsion(*m.homology[static_cast<size_t>(k)], "H_" + std::to_string(k));
    }

    if (m.fullyKnown() && bad.empty()) {
        std::vector<FgAbGroup> h;
        for (const auto& g : m.homology) h.push_back(*g);
        std::vector<FgAbGroup> coh = cohomologyFromHomology(h, m.orientable, m.dim);
        for (int k = 0; k <= m.dim; ++k)
            checkTorsion(coh[static_cast<size_t>(k)], "H^" + std::to_string(k));

        if (eulerCharacteristic(m) != 0)
            bad.push_back("Euler characteristic is " + toString(eulerCharacteristic(m)) +
                          " but every closed flat manifold has 0");
    }
    return bad;
}

Int eulerCharacteristic(const FlatManifold& m)
{
    Int chi = 0;
    for (int k = 0; k <= m.dim; ++k) {
        const FgAbGroup& h = m.knownHomology(k);
        chi += (k % 2 == 0 ? 1 : -1) * Int(h.free_rank);
    }
    return chi;
}

FlatManifold hantzscheWendtTemplate(int d)
{
    if (d < 3 || d % 2 == 0)
        throw std::invalid_argument("hantzscheWendtTemplate: dimension must be odd and at least 3");
    if (d == 3) {
        auto m = findManifold("O3_6");
        return *m;
    }
    FlatManifold m;
    m.name = "HW" + std::to_string(d);
    m.dim = d;
    m.orientable = true;
    m.holonomy_order = ipow(2, static_cast<unsigned>(d - 1));
    m.homology.assign(static_cast<size_t>(d) + 1, std::nullopt);
    m.homology[0] = groupZ(1);
    m.homology[static_cast<size_t>(d)] = groupZ(1); // rational homology of the d-sphere
    return m;
}

std::vector<std::optional<FgAbGroup>> cohomology(const FlatManifold& m)
{
    std::vector<std::optional<FgAbGroup>> out(static_cast<size_t>(m.dim) + 1);
    if (m.orientable) {
        for (int k = 0; k <= m.dim; ++k) out[static_cast<size_t>(k)] = m.homology[static_cast<size_t>(m.dim - k)];
        return out;
    }
    out[0] = groupZ(1);
    for (int k = 1; k <= m.dim; ++k) {
        const auto& hk = m.homology[static_cast<size_t>(k)];
        const auto& hk1 = m.homology[static_cast<size_t>(k - 1)];
        if (hk && hk1) out[static_cast<size_t>(k)] = FgAbGroup{hk->free_rank, hk1->torsion};
    }
    return out;
}

std::vector<FgAbGroup> cohomologyKnown(const FlatManifold& m)
{
    std::vector<FgAbGroup> h;
    h.reserve(m.homology.size());
    for (int k = 0; k <= m.dim; ++k) h.push_back(m.knownHomology(k));
    return cohomologyFromHomology(h, m.orientable, m.dim);
}

namespace {

std::string trimCopy(const std::string& s)
{
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

} // namespace

FlatManifold parseManifoldText(const std::string& text)
{
    FlatManifold m;
    bool haveName = false, haveDim = false, haveOrient = false, haveHol = false;
    std::vector<std::pair<int, std::optional<FgAbGroup>>> degrees;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trimCopy(line);
        if (t.empty() || t[0] == '#') continue;
        size_t colon = t.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("manifold file line " + std::to_string(lineno) +
                                        ": expected 'key: value'");
        std::string key = trimCopy(t.substr(0, colon));
        std::string value = trimCopy(t.substr(colon + 1));
        if (key == "name") {
            m.name = value;
            haveName = true;
        } else if (key == "dim") {
            m.dim = std::stoi(value);
            haveDim = true;
        } else if (key == "orientable") {
            if (value != "true" && value != "false")
                throw std::invalid_argument("manifold file: orientable must be true or false");
            m.orientable = (value == "true");
            haveOrient = true;
        } else if (key == "holonomy_order") {
            m.holonomy_order = Int(value);
            haveHol = true;
        } else if (key.size() >= 2 && (key[0] == 'H' || key[0] == 'h')) {
            int deg = std::stoi(key.substr(1));
            if (value == "?")
                degrees.emplace_back(deg, std::nullopt);
            else
                degrees.emplace_back(deg, parseGroup(value));
        } else {
            throw std::invalid_argument("manifold file: unknown key '" + key + "'");
        }
    }
    if (!haveName || !haveDim || !haveOrient || !haveHol)
        throw std::invalid_argument("manifold file: name, dim, orientable and holonomy_order are required");

    m.homology.assign(static_cast<size_t>(m.dim) + 1, std::nullopt);
    for (auto& [deg, g] : degrees) {
        if (deg < 0 || deg > m.dim)
            throw std::invalid_argument("manifold file: H" + std::to_string(deg) + " outside 0..dim");
        m.homology[static_cast<size_t>(deg)] = std::move(g);
    }
    for (int k = 0; k <= m.dim; ++k) {
        bool listed = false;
        for (auto& [deg, g] : degrees) listed = listed || deg == k;
        if (!listed)
            throw std::invalid_argument("manifold file: missing H" + std::to_string(k) +
                                        " (write '?' for unknown)");
    }
    return m;
}

FlatManifold loadManifoldFile(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open manifold file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    FlatManifold m = parseManifoldText(buf.str());
    std::vector<std::string> bad = validate(m);
    if (!bad.empty()) {
        std::string msg = "manifold file " + path + " failed validation:";
        for (const std::string& b : bad) msg += "\n  - " + b;
        throw std::runtime_error(msg);
    }
    return m;
}

std::string renderManifoldText(const FlatManifold& m)
{
    std::ostringstream out;
    out << "name: " << m.name << "\n";
    out << "dim: " << m.dim << "\n";
    out << "orientable: " << (m.orientable ? "true" : "false") << "\n";
    out << "holonomy_order: " << m.holonomy_order << "\n";
    for (int k = 0; k <= m.dim; ++k) {
        const auto& h = m.homology[static_cast<size_t>(k)];
        out << "H" << k << ": " << (h ? renderGroup(*h) : "?") << "\n";
    }
    return out.str();
}

} // namespace solinv
