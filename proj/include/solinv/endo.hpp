/**
 * Expanding endomorphisms of flat manifolds, described by their covering
 * degree and induced maps on homology, and the derivation of the transfer
 * maps from the composition relations g_* ∘ t = ×n (homology) and
 * t ∘ g^* = ×n (cohomology).
 */

#ifndef SOLINV_ENDO_HPP
#define SOLINV_ENDO_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "solinv/manifolds.hpp"

namespace solinv {

struct ExpandingEndo {
    std::string name;
    FlatManifold manifold;
    Int degree = 2; // n-fold cover, n >= 2
    std::vector<GroupHom> induced_homology; // g_* per degree 0..d
    std::optional<std::vector<GroupHom>> induced_cohomology; // g^*, derivable
    std::optional<std::vector<GroupHom>> user_transfer_homology;
    std::optional<std::vector<GroupHom>> user_transfer_cohomology;
    int top_sign = +1;        // sign of g_* on H_d for orientable manifolds
    bool top_sign_explicit = false;
    bool spinc = false;       // user assertion gating the K-theory duality form
};

struct TransferData {
    std::vector<GroupHom> transfer_homology;   // t per degree, g_* ∘ t = ×n
    std::vector<GroupHom> transfer_cohomology; // t per degree, t ∘ g^* = ×n
};

class TransferError : public std::runtime_error {
public:
    enum class Kind { NonIntegral, Ambiguous };
    TransferError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
    Kind kind;
};

/**
 * Induced maps on cohomology from the induced maps on homology, via the
 * naturality of the universal coefficient sequence: Hom-dual on the free
 * part, Ext-dual on the torsion of the degree below, zero correction
 * block. Supply induced_cohomology explicitly when the correction matters.
 */
std::vector<GroupHom> deriveInducedCohomology(const ExpandingEndo& e);

/** g^* per degree: the user-supplied maps when present, otherwise derived. */
std::vector<GroupHom> inducedCohomology(const ExpandingEndo& e);

/**
 * Solve the transfer relations per degree. On the free part t = n·(g)^-1,
 * verified integral; on torsion the linear congruence system is solved
 * exactly. Throws TransferError (NonIntegral / Ambiguous) when the data
 * admits no or several transfers and none was supplied; user-supplied
 * transfers are validated against the relations instead of solved for.
 */
TransferData deriveTransfer(const ExpandingEndo& e);

/** (|F| + 1)^d, the covering degree that fixes all torsion. */
Int specialDegree(const FlatManifold& m);

/**
 * Transfer restricted to the torsion subgroups, asserted invertible;
 * requires degree = specialDegree(manifold).
 */
std::vector<GroupHom> specialTransferOnTorsion(const ExpandingEndo& e);

/**
 * Structural checks: identity on H_0, top-degree action ±n·id for
 * orientable manifolds, degree/determinant consistency and an exact
 * expansion certificate for holonomy-trivial (torus) manifolds.
 */
std::vector<std::string> validateEndo(const ExpandingEndo& e);

/**
 * Whether all eigenvalues of A satisfy |λ| > 1, certified exactly by the
 * Schur-Cohn test on the reversed characteristic polynomial.
 */
bool isExpandingMatrix(const IntMat& a);

/** Built-in endomorphisms: circle2, circle3, torus23, klein9, o36x125. */
const std::vector<ExpandingEndo>& builtinEndos();
std::optional<ExpandingEndo> findEndo(const std::string& name);

ExpandingEndo circleEndo(const Int& n);

/**
 * Endomorphism definition file: `key: value` lines with keys manifold
 * (builtin name or path), degree, optional top_sign and spinc, and one
 * matrix per degree: g_H0..g_Hd, optional gc_H* (induced cohomology),
 * t_H* / tc_H* (user transfers). Strict validation on load.
 */
ExpandingEndo parseEndoText(const std::string& text, const std::string& baseDir);
ExpandingEndo loadEndoFile(const std::string& path);

} // namespace solinv

#endif
