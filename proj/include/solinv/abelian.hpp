/**
 * Finitely generated abelian groups in canonical form (free rank plus
 * invariant-factor chain) and homomorphisms between them as integer
 * matrices on canonical generators. Equality of canonical forms is
 * isomorphism; all operations are pure.
 *
 * Canonical generator order: free generators first, then torsion
 * generators in increasing invariant-factor order. Hom matrices store the
 * image of domain generator j in column j; torsion rows are kept reduced
 * modulo the codomain orders.
 */

#ifndef SOLINV_ABELIAN_HPP
#define SOLINV_ABELIAN_HPP

#include <string>
#include <utility>
#include <vector>

#include "solinv/smith.hpp"

namespace solinv {

struct FgAbGroup {
    int free_rank = 0;
    std::vector<Int> torsion; // each >= 2, t_1 | t_2 | ... | t_m

    int torsionCount() const { return static_cast<int>(torsion.size()); }
    int generatorCount() const { return free_rank + torsionCount(); }
    bool isTrivial() const { return free_rank == 0 && torsion.empty(); }
    /** 0 for a free generator, the invariant factor for a torsion one. */
    Int generatorOrder(int i) const { return i < free_rank ? Int(0) : torsion[static_cast<size_t>(i - free_rank)]; }

    bool operator==(const FgAbGroup&) const = default;
};

FgAbGroup groupZ(int rank);
FgAbGroup groupCyclic(const Int& order);
FgAbGroup groupTrivial();

/** Sort an arbitrary multiset of orders (>= 1 each) into a divisibility chain, dropping 1s. */
std::vector<Int> canonicalFactors(std::vector<Int> orders);

/** Cokernel of the relation matrix (rows are relations on n generators). */
FgAbGroup groupFromPresentation(int n_generators, const IntMat& relations);

FgAbGroup torsionSubgroup(const FgAbGroup& g);
FgAbGroup directSum(const FgAbGroup& a, const FgAbGroup& b);
inline bool isIsomorphic(const FgAbGroup& a, const FgAbGroup& b) { return a == b; }

/** Rendering grammar: `Z^r (+) Z/t1 (+) ... (+) Z/tm`, `0` for trivial. */
std::string renderGroup(const FgAbGroup& g);
/** Parse the same grammar; non-canonical torsion lists are canonicalized. */
FgAbGroup parseGroup(const std::string& text);

/**
 * Cohomology of a closed connected manifold from its integral homology:
 * Poincaré duality (H^k = H_{d-k}) when orientable, otherwise the
 * universal coefficient theorem (H^k = free(H_k) ⊕ torsion(H_{k-1})).
 * Rejects inputs with H_0 != Z.
 */
std::vector<FgAbGroup> cohomologyFromHomology(const std::vector<FgAbGroup>& h,
                                              bool orientable, int d);

/**
 * Topological K-groups from a graded (co)homology in dimension d <= 3:
 * even = degrees 0 and 2, odd = degrees 1 and 3. Throws for d > 3, where
 * the degree-sum formula is not available.
 */
std::pair<FgAbGroup, FgAbGroup> kGroupsLowDim(const std::vector<FgAbGroup>& graded, int d);

struct GroupHom {
    FgAbGroup domain;
    FgAbGroup codomain;
    IntMat matrix; // codomain generators index rows, domain generators index columns
};

/**
 * Validates block structure (torsion cannot hit free generators; torsion
 * images respect orders) and stores torsion rows reduced. Throws
 * std::invalid_argument on malformed input.
 */
GroupHom makeHom(const FgAbGroup& domain, const FgAbGroup& codomain, const IntMat& matrix);

GroupHom identityHom(const FgAbGroup& g);
GroupHom zeroHom(const FgAbGroup& domain, const FgAbGroup& codomain);
GroupHom multiplicationHom(const FgAbGroup& g, const Int& m);

/** f ∘ g; requires codomain(g) = domain(f). */
GroupHom compose(const GroupHom& f, const GroupHom& g);

/** Whether f = m·id on canonical generators, modulo the torsion orders. */
bool isMultiplicationBy(const GroupHom& f, const Int& m);

bool homsEqual(const GroupHom& f, const GroupHom& g);

/** Restriction of a self-map-compatible hom to the torsion subgroups. */
GroupHom torsionRestriction(const GroupHom& f);

/** Blocks of the canonical matrix layout. */
IntMat freeBlock(const GroupHom& f);     // free rows x free cols
IntMat torsionBlock(const GroupHom& f);  // torsion rows x torsion cols
IntMat couplingBlock(const GroupHom& f); // torsion rows x free cols

/**
 * A presentation together with the unimodular change of coordinates onto
 * the canonical form; used to transport homomorphism matrices.
 */
struct CanonicalizedPresentation {
    FgAbGroup group;
    IntMat to_canonical;   // canonical gens x presentation gens
    IntMat from_canonical; // presentation gens x canonical gens (a section)
};

CanonicalizedPresentation canonicalizePresentation(int n_generators, const IntMat& relations);

struct SumDecomposition {
    FgAbGroup sum;
    GroupHom inj1;
    GroupHom inj2;
};

SumDecomposition directSumWithInjections(const FgAbGroup& a, const FgAbGroup& b);

/** Block-diagonal sum f ⊕ g between the canonicalized direct sums. */
GroupHom homDirectSum(const GroupHom& f, const GroupHom& g);

} // namespace solinv

#endif
