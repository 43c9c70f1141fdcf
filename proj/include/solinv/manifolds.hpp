/**
 * Catalog of flat manifolds with graded integral homology, holonomy order
 * and orientability, validation against the structural constraints every
 * closed flat manifold satisfies, and the manifold definition file format.
 *
 * Partial entries (the odd-dimensional Hantzsche-Wendt templates above
 * dimension three) mark unspecified degrees as unknown; operations that
 * need those degrees report insufficient data instead of guessing.
 */

#ifndef SOLINV_MANIFOLDS_HPP
#define SOLINV_MANIFOLDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "solinv/abelian.hpp"

namespace solinv {

struct FlatManifold {
    std::string name;
    int dim = 0;
    bool orientable = true;
    Int holonomy_order = 1;
    // H_0 .. H_d; nullopt marks a degree the source does not determine.
    std::vector<std::optional<FgAbGroup>> homology;

    bool fullyKnown() const;
    const FgAbGroup& knownHomology(int k) const; // throws on unknown degree
};

FlatManifold makeManifold(const std::string& name, int dim, bool orientable,
                          const Int& holonomy, std::vector<FgAbGroup> homology);

/**
 * Built-in catalog: S1, T2, Klein, and the ten flat 3-manifolds
 * O3_1..O3_6, N3_1..N3_4 (T3 = O3_1).
 */
const std::vector<FlatManifold>& catalog();

/** Lookup by name (case-insensitive; aliases T3 -> O3_1, K2 -> Klein). */
std::optional<FlatManifold> findManifold(const std::string& name);

/**
 * Structural validation: connectedness (H_0 = Z), the top-degree rule
 * (H_d = Z iff orientable, else 0), torsion orders dividing the holonomy
 * order in homology and derived cohomology, and zero Euler characteristic
 * when all degrees are known. Returns human-readable violations.
 */
std::vector<std::string> validate(const FlatManifold& m);

/** Σ (−1)^i rank H_i; requires all degrees known. */
Int eulerCharacteristic(const FlatManifold& m);

/**
 * Hantzsche-Wendt template in odd dimension d >= 3: orientable, holonomy
 * order 2^(d-1), H_0 = H_d = Z, intermediate degrees torsion-only and
 * unknown. d = 3 resolves to the catalog entry O3_6. Rejects even d.
 */
FlatManifold hantzscheWendtTemplate(int d);

/** Graded cohomology; unknown degrees propagate as unknown. */
std::vector<std::optional<FgAbGroup>> cohomology(const FlatManifold& m);

/** Cohomology for fully known manifolds. Throws if a needed degree is unknown. */
std::vector<FgAbGroup> cohomologyKnown(const FlatManifold& m);

/**
 * Manifold definition file: `key: value` lines with keys name, dim,
 * orientable, holonomy_order and H0..Hd rendered in the group grammar;
 * '#' starts a comment. Unknown degrees may be written as '?'.
 */
FlatManifold parseManifoldText(const std::string& text);
FlatManifold loadManifoldFile(const std::string& path);
std::string renderManifoldText(const FlatManifold& m);

} // namespace solinv

#endif
