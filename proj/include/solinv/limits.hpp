/**
 * Stationary inductive limits lim(G, α) of a finitely generated abelian
 * group under a self-map: the direct limit of G -α→ G -α→ G -α→ ...
 *
 * The torsion of the limit is the eventual image of α on T(G); the free
 * part is canonicalized, when possible, to a direct sum of scalar limits
 * ⊕ Z[1/m_i] identified by their inverted prime sets (lim(Z, ×9) and
 * lim(Z, ×3) are both Z[1/3]). Actions that do not split over Z fall back
 * to an Opaque description rather than guessing.
 */

#ifndef SOLINV_LIMITS_HPP
#define SOLINV_LIMITS_HPP

#include <string>
#include <vector>

#include "solinv/abelian.hpp"

namespace solinv {

struct StationarySystem {
    FgAbGroup group;
    GroupHom endo; // domain = codomain = group
};

StationarySystem makeSystem(const FgAbGroup& g, const IntMat& endoMatrix);
StationarySystem makeSystem(const GroupHom& endo);

/** One Z[1/m] summand: its inverted primes (sorted, distinct) and the raw scalar |m|. */
struct ScalarSummand {
    std::vector<Int> primes;
    Int raw = 1;
};

struct FreeLimit {
    enum class Kind { Scalars, Opaque };
    Kind kind = Kind::Scalars;

    // Scalars
    std::vector<ScalarSummand> scalars;
    // True when summand i corresponds to input free generator i (the action
    // was literally diagonal); lets the oracle check witnesses per index.
    bool basis_aligned = true;

    // Opaque
    int opaque_rank = 0;
    std::vector<Int> inverted_primes;
    IntMat action; // eventual-image action matrix

    int rank() const
    {
        return kind == Kind::Scalars ? static_cast<int>(scalars.size()) : opaque_rank;
    }
};

struct LimitGroup {
    FgAbGroup torsion; // free_rank = 0
    FreeLimit free_part;
    StationarySystem presentation; // retained for traces and oracle checks

    int rank() const { return free_part.rank(); }
    bool isCanonical() const { return free_part.kind == FreeLimit::Kind::Scalars; }
    bool isTrivial() const { return torsion.isTrivial() && rank() == 0; }
};

/**
 * Image of α^k restricted to torsion for k beyond stabilization (the
 * subgroup chain is iterated until two successive images coincide; finite
 * torsion forces this within |T(G)| steps).
 */
FgAbGroup eventualTorsion(const StationarySystem& sys);

LimitGroup stationaryLimit(const StationarySystem& sys);

/** Rank of A^r on the free quotient (r = free rank of the group). */
int limitRank(const StationarySystem& sys);

/**
 * Trace of A^k on the free quotient, k >= 1. Equals the trace of the shift
 * automorphism on lim ⊗ Q (nilpotent directions contribute zero).
 */
Int inducedTrace(const StationarySystem& sys, unsigned k);

enum class IsoAnswer { Yes, No, Unknown };

/**
 * Decides isomorphism of two limits when both are canonical (compare
 * torsion and the multiset of prime sets); answers No on rank or torsion
 * mismatch, Unknown when an Opaque part blocks the comparison.
 */
IsoAnswer limitsIsomorphic(const LimitGroup& a, const LimitGroup& b);

LimitGroup trivialLimit();

/**
 * Rendering grammar: `Z[1/r]^k (+) <torsion>` with r the product of the
 * inverted primes; `Opaque(rank=r, primes={...})` for the fallback; `0`
 * for the trivial limit.
 */
std::string renderLimit(const LimitGroup& l);

/** Canonical rendering plus the raw scalar form when they differ, e.g. "Z[1/3] (= Z[1/9])". */
std::string renderLimitDecorated(const LimitGroup& l);

} // namespace solinv

#endif
