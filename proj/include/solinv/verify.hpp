/**
 * The machine-check suite behind `solinv verify` and the acceptance test
 * binary: catalog integrity, the golden Klein-bottle computation, the
 * theorem checks over all builtin endomorphisms, Lefschetz cross-checks
 * against the torus oracle, fingerprint/corruption controls and the
 * randomized property suites.
 */

#ifndef SOLINV_VERIFY_HPP
#define SOLINV_VERIFY_HPP

#include <string>
#include <vector>

namespace solinv {

struct CriterionResult {
    int number = 0;
    std::string title;
    bool pass = false;
    std::string detail; // first failure, or a short summary
};

std::vector<CriterionResult> runVerifySuite(int oracle_depth);

/** True iff every criterion passed. */
bool allPassed(const std::vector<CriterionResult>& results);

std::string renderVerifyText(const std::vector<CriterionResult>& results);
std::string renderVerifyJson(const std::vector<CriterionResult>& results);

} // namespace solinv

#endif
