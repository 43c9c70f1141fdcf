/**
 * The full invariant pipeline for one expanding endomorphism: stable and
 * unstable groupoid homology as stationary limits of (co)homology under
 * the transfer maps, K-theory in dimension <= 3, Cech cohomology of the
 * solenoid, the theorem-check suite, and Lefschetz periodic-point counts.
 */

#ifndef SOLINV_INVARIANTS_HPP
#define SOLINV_INVARIANTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "solinv/endo.hpp"
#include "solinv/limits.hpp"

namespace solinv {

enum class CheckStatus { Pass, Fail, Skip, Unknown };
std::string toString(CheckStatus s);

struct CheckOutcome {
    std::string name;
    CheckStatus status = CheckStatus::Skip;
    std::string anchor; // stable identifier of the statement being checked
    std::string detail;
};

struct KPair {
    LimitGroup even;
    LimitGroup odd;
};

struct InvariantReport {
    ExpandingEndo endo;
    std::vector<LimitGroup> stable_homology;   // lim(H^k(Y), t_cohomology)
    std::vector<LimitGroup> unstable_homology; // lim(H_k(Y), t_homology)
    std::vector<LimitGroup> cech_x;            // lim(H^k(Y), g^*)
    std::optional<KPair> stable_k;             // lim(K^*(Y), t), dim <= 3 only
    std::optional<KPair> unstable_k;           // lim(K_*(Y), t), dim <= 3 only
    std::vector<CheckOutcome> notes;
};

class EndoValidationError : public std::runtime_error {
public:
    EndoValidationError(std::string what, std::vector<std::string> v)
        : std::runtime_error(std::move(what)), violations(std::move(v)) {}
    std::vector<std::string> violations;
};

/**
 * Full report: validates the endomorphism, derives transfers, computes
 * every graded limit and runs the theorem checks. Throws
 * EndoValidationError / TransferError on inconsistent input data.
 */
InvariantReport computeReport(const ExpandingEndo& e);

CheckOutcome checkDegreeZero(const InvariantReport& r);
CheckOutcome checkTopDegree(const InvariantReport& r);
CheckOutcome checkRational(const InvariantReport& r);
CheckOutcome checkTorsion(const InvariantReport& r);

struct PutnamVerdict {
    bool no_shift_works = false;
    std::optional<int> shift; // witness shift k with H^*(X) ≅ H_{*-k}(G^u)
    bool unknown = false;     // an Opaque graded piece blocked the search
    std::optional<bool> reflection_match; // H^*(X) ≅ H_{d-*}(G^u); orientable only
};

/**
 * Searches all shifts k in [-d, d] for a graded isomorphism between
 * H^*(X) and H_{*-k}(G^u); for orientable manifolds additionally asserts
 * the d-* duality match.
 */
PutnamVerdict putnamQuestion(const InvariantReport& r);
PutnamVerdict putnamQuestion(const ExpandingEndo& e);
CheckOutcome checkPutnam(const InvariantReport& r);

/**
 * The induced-map forms of the stable invariants on an orientable
 * manifold: homology_form[j] = lim(H_{d-j}(Y), g_*[d-j]), and (when the
 * spin^c flag is asserted, dim <= 3) the K-theory analogue
 * lim(K_{*-d}(Y), g_*). Throws for nonorientable manifolds.
 */
struct ShiftedForms {
    std::vector<LimitGroup> homology_form;
    std::optional<KPair> k_form;
};
ShiftedForms stableShiftedForms(const InvariantReport& r);

/**
 * Compares the shifted forms degreewise against the stable homology and
 * stable K-groups; skipped with a note for nonorientable manifolds.
 */
CheckOutcome checkStableShiftedForms(const InvariantReport& r);

struct PeriodicCount {
    bool supported = false;
    std::string reason;       // set when unsupported
    Int count = 0;            // |Per_k| for the stored top-degree sign
    Int lefschetz_sum = 0;    // signed alternating trace sum
    std::optional<std::pair<Int, Int>> bound_pair; // {n^k - 1, n^k + 1}
};

/**
 * Lefschetz periodic-point count of the k-th iterate. Supported only when
 * every intermediate degree of the unstable homology has limit rank zero,
 * so the alternating trace sum reduces to the pinned degree-0 (×n) and
 * top-degree (±1) actions; otherwise reports insufficient data.
 */
PeriodicCount periodicPoints(const InvariantReport& r, unsigned k);
PeriodicCount periodicPoints(const ExpandingEndo& e, unsigned k);

/** Human-readable report. */
std::string renderReportText(const InvariantReport& r);

/**
 * Machine-readable report: a single JSON document with manifold, degree,
 * gradeds (degree -> group string) and checks ({name, status, anchor}).
 * Rendering is deterministic; parse + re-render is byte-identical.
 */
std::string renderReportJson(const InvariantReport& r);

} // namespace solinv

#endif
