#include "solinv/endo.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace solinv {

namespace {

std::vector<Int> torsionOrders(const FgAbGroup& g) { return g.torsion; }

struct BlockSolve {
    bool solvable = false;
    bool unique = false;
    IntMat x;
};

// Solve G·X ≡ R (left) or X·G ≡ R (right), equation and unknown row i taken
// modulo rowOrders[i]; unknown column j carries the hom validity scaling for
// a domain generator of order colOrders[j] (0 = free generator).
BlockSolve solveBlockCongruence(bool leftMultiply, const IntMat& g, const IntMat& r,
                                const std::vector<Int>& rowOrders,
                                const std::vector<Int>& colOrders)
{
    const Index m = r.rows(), w = r.cols();
    BlockSolve out;
    if (m == 0 || w == 0) {
        out.solvable = true;
        out.unique = true;
        out.x = IntMat(m, w);
        return out;
    }

    auto scale = [&](Index i, Index j) -> Int {
        const Int& ti = rowOrders[static_cast<size_t>(i)];
        const Int& cj = colOrders[static_cast<size_t>(j)];
        if (cj == 0) return 1;
        return ti / gcdInt(ti, cj);
    };

    const Index unknowns = m * w;
    IntMat coeff = IntMat::Zero(unknowns, unknowns);
    IntVec rhs(unknowns);
    std::vector<Int> moduli(static_cast<size_t>(unknowns));
    std::vector<Int> unknownModuli(static_cast<size_t>(unknowns));

    auto idx = [&](Index i, Index j) { return i * w + j; };
    for (Index i = 0; i < m; ++i) {
        for (Index j = 0; j < w; ++j) {
            Index e = idx(i, j);
            rhs(e) = r(i, j);
            moduli[static_cast<size_t>(e)] = rowOrders[static_cast<size_t>(i)];
            if (leftMultiply) {
                // (G·X)(i,j) = Σ_k G(i,k) X(k,j), X(k,j) = scale(k,j)·Y(k,j)
                for (Index k = 0; k < m; ++k) coeff(e, idx(k, j)) = g(i, k) * scale(k, j);
            } else {
                // (X·G)(i,j) = Σ_k X(i,k) G(k,j), X(i,k) = scale(i,k)·Y(i,k)
                for (Index k = 0; k < w; ++k) coeff(e, idx(i, k)) = scale(i, k) * g(k, j);
            }
        }
    }
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < w; ++j)
            unknownModuli[static_cast<size_t>(idx(i, j))] =
                rowOrders[static_cast<size_t>(i)] / scale(i, j);

    CongruenceSolution sol = solveLinearCongruences(coeff, rhs, moduli, unknownModuli);
    if (!sol.solvable) return out;
    out.solvable = true;
    out.unique = sol.unique;
    out.x = IntMat(m, w);
    for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < w; ++j)
            out.x(i, j) = scale(i, j) * sol.particular(idx(i, j));
    return out;
}

// Transfer t for one degree, solving g∘t = ×n (homology orientation) or
// t∘g = ×n (cohomology orientation).
GroupHom solveTransferDegree(const GroupHom& g, const Int& n, bool homologySide,
                             const std::string& label)
{
    const FgAbGroup& grp = g.domain;
    const int r = grp.free_rank;
    const int m = grp.torsionCount();
    const std::vector<Int> orders = torsionOrders(grp);

    IntMat ag = freeBlock(g), bg = torsionBlock(g), cg = couplingBlock(g);

    IntMat at(r, r);
    if (r > 0) {
        IntMat target = IntMat::Identity(r, r);
        for (Index i = 0; i < r; ++i) target(i, i) = n;
        auto inv = solveRational(ag, target);
        if (!inv || !isIntegral(*inv))
            throw TransferError(TransferError::Kind::NonIntegral,
                                label + ": n·g^-1 on the free part is not an integer matrix");
        at = toIntegral(*inv);
    }

    // torsion block
    IntMat targetT = IntMat::Identity(m, m);
    for (Index i = 0; i < m; ++i) {
        targetT(i, i) = n % orders[static_cast<size_t>(i)];
    }
    BlockSolve bt = solveBlockCongruence(homologySide, bg, targetT, orders, orders);
    if (!bt.solvable)
        throw TransferError(TransferError::Kind::NonIntegral,
                            label + ": the torsion relation has no solution");

    // coupling block (torsion rows, free columns)
    std::vector<Int> freeCols(static_cast<size_t>(r), Int(0));
    BlockSolve ct;
    if (homologySide) {
        // g∘t: Cg·At + Bg·Ct ≡ 0  =>  Bg·Ct ≡ -Cg·At
        IntMat rhs = (m > 0 && r > 0) ? IntMat(-(cg * at)) : IntMat(m, r);
        ct = solveBlockCongruence(true, bg, rhs, orders, freeCols);
    } else {
        // t∘g: Ct·Ag + Bt·Cg ≡ 0  =>  Ct·Ag ≡ -Bt·Cg
        IntMat rhs = (m > 0 && r > 0) ? IntMat(-(bt.x * cg)) : IntMat(m, r);
        ct = solveBlockCongruence(false, ag, rhs, orders, freeCols);
    }
    if (!ct.solvable)
        throw TransferError(TransferError::Kind::NonIntegral,
                            label + ": the coupling relation has no solution");
    if (!bt.unique || !ct.unique)
        throw TransferError(TransferError::Kind::Ambiguous,
                            label + ": the torsion transfer is not unique; supply it explicitly");

    IntMat t = IntMat::Zero(r + m, r + m);
    t.topLeftCorner(r, r) = at;
    t.bottomLeftCorner(m, r) = ct.x;
    t.bottomRightCorner(m, m) = bt.x;
    GroupHom hom = makeHom(grp, grp, t);

    GroupHom composite = homologySide ? compose(g, hom) : compose(hom, g);
    if (!isMultiplicationBy(composite, n))
        throw std::logic_error(label + ": derived transfer fails the multiplication-by-n relation");
    return hom;
}

} // namespace

std::vector<GroupHom> deriveInducedCohomology(const ExpandingEndo& e)
{
    const FlatManifold& m = e.manifold;
    std::vector<FgAbGroup> coh = cohomologyKnown(m);
    std::vector<GroupHom> out;
    out.reserve(coh.size());

    for (int k = 0; k <= m.dim; ++k) {
        const FgAbGroup& ck = coh[static_cast<size_t>(k)];
        const int r = ck.free_rank;
        const int t = ck.torsionCount();
        IntMat mat = IntMat::Zero(r + t, r + t);

        // Hom-dual: transpose of the free action one degree up
        IntMat af = freeBlock(e.induced_homology[static_cast<size_t>(k)]);
        mat.topLeftCorner(r, r) = af.transpose();

        // Ext-dual of the torsion action one degree down:
        // Ext(B)[j][i] = B[i][j]·t_j / t_i
        if (k >= 1 && t > 0) {
            const GroupHom& below = e.induced_homology[static_cast<size_t>(k - 1)];
            IntMat b = torsionBlock(below);
            const std::vector<Int>& ords = below.domain.torsion;
            for (Index i = 0; i < t; ++i) {
                for (Index j = 0; j < t; ++j) {
                    Int num = b(i, j) * ords[static_cast<size_t>(j)];
                    if (num % ords[static_cast<size_t>(i)] != 0)
                        throw std::logic_error("deriveInducedCohomology: Ext dual not integral");
                    mat(r + j, r + i) = num / ords[static_cast<size_t>(i)];
                }
            }
        }
        out.push_back(makeHom(ck, ck, mat));
    }
    return out;
}

std::vector<GroupHom> inducedCohomology(const ExpandingEndo& e)
{
    if (e.induced_cohomology) return *e.induced_cohomology;
    return deriveInducedCohomology(e);
}

TransferData deriveTransfer(const ExpandingEndo& e)
{
    const FlatManifold& m = e.manifold;
    if (static_cast<int>(e.induced_homology.size()) != m.dim + 1)
        throw std::invalid_argument("deriveTransfer: induced maps must be present for all degrees");

    std::vector<GroupHom> coh = inducedCohomology(e);
    TransferData data;

    for (int k = 0; k <= m.dim; ++k) {
        const GroupHom& gh = e.induced_homology[static_cast<size_t>(k)];
        const GroupHom& gc = coh[static_cast<size_t>(k)];
        std::string hLabel = "transfer on H_" + std::to_string(k);
        std::string cLabel = "transfer on H^" + std::to_string(k);

        if (e.user_transfer_homology) {
            const GroupHom& t = (*e.user_transfer_homology)[static_cast<size_t>(k)];
            if (!isMultiplicationBy(compose(gh, t), e.degree))
                throw TransferError(TransferError::Kind::NonIntegral,
                                    hLabel + ": supplied transfer violates g∘t = ×n");
            data.transfer_homology.push_back(t);
        } else {
            data.transfer_homology.push_back(solveTransferDegree(gh, e.degree, true, hLabel));
        }

        if (e.user_transfer_cohomology) {
            const GroupHom& t = (*e.user_transfer_cohomology)[static_cast<size_t>(k)];
            if (!isMultiplicationBy(compose(t, gc), e.degree))
                throw TransferError(TransferError::Kind::NonIntegral,
                                    cLabel + ": supplied transfer violates t∘g^* = ×n");
            data.transfer_cohomology.push_back(t);
        } else {
            data.transfer_cohomology.push_back(solveTransferDegree(gc, e.degree, false, cLabel));
        }
    }
    return data;
}

Int specialDegree(const FlatManifold& m)
{
    return ipow(m.holonomy_order + 1, static_cast<unsigned>(m.dim));
}

namespace {

bool isFullTorsionImage(const GroupHom& t)
{
    const int m = t.domain.torsionCount();
    if (m == 0) return true;
    IntMat basis = hermiteBasis(hcat(torsionBlock(t), diagMatrix(t.domain.torsion)));
    return basis == IntMat(IntMat::Identity(m, m));
}

} // namespace

std::vector<GroupHom> specialTransferOnTorsion(const ExpandingEndo& e)
{
    if (e.degree != specialDegree(e.manifold))
        throw std::invalid_argument("specialTransferOnTorsion: degree " + toString(e.degree) +
                                    " is not the special degree " +
                                    toString(specialDegree(e.manifold)));
    TransferData data = deriveTransfer(e);
    std::vector<GroupHom> out;
    for (const GroupHom& t : data.transfer_homology) {
        GroupHom restricted = torsionRestriction(t);
        if (!isFullTorsionImage(restricted))
            throw std::logic_error("specialTransferOnTorsion: restriction is not an isomorphism");
        out.push_back(std::move(restricted));
    }
    for (const GroupHom& t : data.transfer_cohomology) {
        if (!isFullTorsionImage(torsionRestriction(t)))
            throw std::logic_error("specialTransferOnTorsion: cohomology restriction is not an isomorphism");
    }
    return out;
}

bool isExpandingMatrix(const IntMat& a)
{
    if (a.rows() != a.cols()) throw std::invalid_argument("isExpandingMatrix: matrix must be square");
    const Index n = a.rows();
    if (n == 0) return true;

    std::vector<Int> chi = charPoly(a);
    if (chi[0] == 0) return false; // zero eigenvalue

    // reversed polynomial has roots 1/λ; expanding ⟺ all of them strictly
    // inside the unit circle (Schur-Cohn recursion, exact)
    std::vector<Int> p(chi.rbegin(), chi.rend());
    while (p.size() > 1) {
        const size_t deg = p.size() - 1;
        Int a0 = p[0], an = p[deg];
        if (absInt(a0) >= absInt(an)) return false;
        std::vector<Int> q(deg);
        for (size_t i = 0; i < deg; ++i) q[i] = an * p[i + 1] - a0 * p[deg - 1 - i];
        p = std::move(q);
    }
    return true;
}

std::vector<std::string> validateEndo(const ExpandingEndo& e)
{
    std::vector<std::string> bad;
    const FlatManifold& m = e.manifold;

    for (const std::string& v : validate(m)) bad.push_back("manifold: " + v);
    if (e.degree < 2) bad.push_back("covering degree must be at least 2");
    if (static_cast<int>(e.induced_homology.size()) != m.dim + 1) {
        bad.push_back("induced maps must be given in every degree 0..dim");
        return bad;
    }
    if (!m.fullyKnown()) {
        bad.push_back("manifold homology is not fully specified");
        return bad;
    }

    for (int k = 0; k <= m.dim; ++k) {
        const GroupHom& g = e.induced_homology[static_cast<size_t>(k)];
        if (!(g.domain == m.knownHomology(k)) || !(g.codomain == m.knownHomology(k)))
            bad.push_back("induced map in degree " + std::to_string(k) +
                          " is not a self-map of H_" + std::to_string(k));
    }
    if (!bad.empty()) return bad;

    if (!isMultiplicationBy(e.induced_homology[0], 1))
        bad.push_back("induced map on H_0 must be the identity");

    if (m.orientable) {
        const GroupHom& top = e.induced_homology[static_cast<size_t>(m.dim)];
        if (!isMultiplicationBy(top, e.degree) && !isMultiplicationBy(top, -e.degree)) {
            bad.push_back("induced map on H_" + std::to_string(m.dim) +
                          " of an orientable manifold must be ±" + toString(e.degree) +
                          " (the covering degree up to orientation)");
        } else {
            int sign = isMultiplicationBy(top, e.degree) ? +1 : -1;
            if (e.top_sign_explicit && sign != e.top_sign)
                bad.push_back("declared top-degree sign disagrees with the induced map");
        }
    }

    if (m.holonomy_order == 1) {
        // torus family: degree is |det| of the action on H_1, and the action
        // must be expanding
        IntMat a = freeBlock(e.induced_homology[1]);
        if (absInt(determinant(a)) != e.degree)
            bad.push_back("torus endomorphism: |det| of the H_1 action is " +
                          toString(absInt(determinant(a))) + " but the declared degree is " +
                          toString(e.degree));
        if (!isExpandingMatrix(a))
            bad.push_back("torus endomorphism: the H_1 action has an eigenvalue of modulus <= 1, "
                          "so the map is not expanding");
    }
    return bad;
}

namespace {

ExpandingEndo makeBuiltin(const std::string& name, const FlatManifold& m, const Int& degree,
                          const std::vector<IntMat>& matrices)
{
    ExpandingEndo e;
    e.name = name;
    e.manifold = m;
    e.degree = degree;
    for (int k = 0; k <= m.dim; ++k) {
        const FgAbGroup& h = m.knownHomology(k);
        e.induced_homology.push_back(makeHom(h, h, matrices[static_cast<size_t>(k)]));
    }
    if (m.orientable) {
        e.top_sign = isMultiplicationBy(e.induced_homology[static_cast<size_t>(m.dim)], -degree) ? -1 : +1;
        e.spinc = m.dim <= 3; // orientable manifolds of dimension <= 3 are spin
    }
    return e;
}

IntMat scalar1x1(const Int& v)
{
    IntMat m(1, 1);
    m(0, 0) = v;
    return m;
}

std::vector<ExpandingEndo> buildBuiltins()
{
    std::vector<ExpandingEndo> endos;
    endos.push_back(circleEndo(2));
    endos.push_back(circleEndo(3));

    FlatManifold t2 = *findManifold("T2");
    IntMat a(2, 2);
    a << 2, 0, 0, 3;
    endos.push_back(makeBuiltin("torus23", t2, 6, {scalar1x1(1), a, scalar1x1(6)}));

    FlatManifold klein = *findManifold("Klein");
    IntMat k1(2, 2);
    k1 << 3, 0, 0, 1; // ×3 on the free part, identity on Z/2
    endos.push_back(makeBuiltin("klein9", klein, 9, {scalar1x1(1), k1, IntMat(0, 0)}));

    FlatManifold o36 = *findManifold("O3_6");
    endos.push_back(makeBuiltin("o36x125", o36, 125,
                                {scalar1x1(1), IntMat(IntMat::Identity(2, 2)), IntMat(0, 0),
                                 scalar1x1(125)}));
    return endos;
}

} // namespace

ExpandingEndo circleEndo(const Int& n)
{
    if (n < 2) throw std::invalid_argument("circleEndo: degree must be at least 2");
    FlatManifold s1 = *findManifold("S1");
    return makeBuiltin("circle" + toString(n), s1, n, {scalar1x1(1), scalar1x1(n)});
}

const std::vector<ExpandingEndo>& builtinEndos()
{
    static const std::vector<ExpandingEndo> endos = buildBuiltins();
    return endos;
}

std::optional<ExpandingEndo> findEndo(const std::string& name)
{
    std::string key = name;
    std::transform(key.begin(), key.end(), key.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (const ExpandingEndo& e : builtinEndos())
        if (e.name == key) return e;
    return std::nullopt;
}

namespace {

std::string trimCopy(const std::string& s)
{
    size_t a = s.find_first_not_of(" \t\r");
    size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

std::vector<GroupHom> homsFromMatrices(const std::map<int, IntMat>& mats,
                                       const std::vector<FgAbGroup>& groups,
                                       const std::string& family)
{
    std::vector<GroupHom> out;
    for (int k = 0; k < static_cast<int>(groups.size()); ++k) {
        auto it = mats.find(k);
        if (it == mats.end())
            throw std::invalid_argument("endo file: family '" + family + "' is missing degree " +
                                        std::to_string(k));
        out.push_back(makeHom(groups[static_cast<size_t>(k)], groups[static_cast<size_t>(k)],
                              it->second));
    }
    if (static_cast<int>(mats.size()) != static_cast<int>(groups.size()))
        throw std::invalid_argument("endo file: family '" + family + "' has out-of-range degrees");
    return out;
}

} // namespace

ExpandingEndo parseEndoText(const std::string& text, const std::string& baseDir)
{
    ExpandingEndo e;
    bool haveManifold = false, haveDegree = false;
    std::map<int, IntMat> g, gc, th, tc;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trimCopy(line);
        if (t.empty() || t[0] == '#') continue;
        size_t colon = t.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("endo file line " + std::to_string(lineno) +
                                        ": expected 'key: value'");
        std::string key = trimCopy(t.substr(0, colon));
        std::string value = trimCopy(t.substr(colon + 1));

        auto degreeOf = [&](const std::string& prefix) {
            std::string suffix = key.substr(prefix.size());
            if (suffix.empty() ||
                !std::all_of(suffix.begin(), suffix.end(),
                             [](unsigned char c) { return std::isdigit(c); }))
                throw std::invalid_argument("endo file line " + std::to_string(lineno) +
                                            ": bad degree in key '" + key + "'");
            return std::stoi(suffix);
        };
        if (key == "manifold") {
            auto builtin = findManifold(value);
            if (builtin) {
                e.manifold = *builtin;
            } else {
                std::string path = value;
                if (!baseDir.empty() && path.find('/') != 0) path = baseDir + "/" + path;
                e.manifold = loadManifoldFile(path);
            }
            haveManifold = true;
        } else if (key == "degree") {
            e.degree = Int(value);
            haveDegree = true;
        } else if (key == "top_sign") {
            if (value != "+1" && value != "-1" && value != "1")
                throw std::invalid_argument("endo file: top_sign must be +1 or -1");
            e.top_sign = (value == "-1") ? -1 : +1;
            e.top_sign_explicit = true;
        } else if (key == "spinc") {
            e.spinc = (value == "true");
        } else if (key.rfind("g_H", 0) == 0) {
            g[degreeOf("g_H")] = parseMatrix(value);
        } else if (key.rfind("gc_H", 0) == 0) {
            gc[degreeOf("gc_H")] = parseMatrix(value);
        } else if (key.rfind("t_H", 0) == 0) {
            th[degreeOf("t_H")] = parseMatrix(value);
        } else if (key.rfind("tc_H", 0) == 0) {
            tc[degreeOf("tc_H")] = parseMatrix(value);
        } else {
            throw std::invalid_argument("endo file: unknown key '" + key + "'");
        }
    }
    if (!haveManifold || !haveDegree)
        throw std::invalid_argument("endo file: manifold and degree are required");
    if (!e.manifold.fullyKnown())
        throw std::invalid_argument("endo file: manifold homology must be fully specified");

    std::vector<FgAbGroup> h;
    for (int k = 0; k <= e.manifold.dim; ++k) h.push_back(e.manifold.knownHomology(k));
    std::vector<FgAbGroup> coh = cohomologyKnown(e.manifold);

    e.induced_homology = homsFromMatrices(g, h, "g_H");
    if (!gc.empty()) e.induced_cohomology = homsFromMatrices(gc, coh, "gc_H");
    if (!th.empty()) e.user_transfer_homology = homsFromMatrices(th, h, "t_H");
    if (!tc.empty()) e.user_transfer_cohomology = homsFromMatrices(tc, coh, "tc_H");

    e.name = "file";
    if (e.manifold.orientable && !e.top_sign_explicit) {
        const GroupHom& top = e.induced_homology[static_cast<size_t>(e.manifold.dim)];
        if (isMultiplicationBy(top, -e.degree)) e.top_sign = -1;
    }
    return e;
}

ExpandingEndo loadEndoFile(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open endo file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string dir;
    size_t slash = path.find_last_of('/');
    if (slash != std::string::npos) dir = path.substr(0, slash);
    ExpandingEndo e = parseEndoText(buf.str(), dir);
    e.name = path;
    std::vector<std::string> bad = validateEndo(e);
    if (!bad.empty()) {
        std::string msg = "endo file " + path + " failed validation:";
        for (const std::string& b : bad) msg += "\n  - " + b;
        throw std::runtime_error(msg);
    }
    return e;
}

} // namespace solinv
