// Acceptance suite: runs every verification criterion and prints one
// pass/fail line per criterion. Exit status 0 iff all pass.

#include <iostream>

#include "solinv/verify.hpp"

int main()
{
    std::vector<solinv::CriterionResult> results = solinv::runVerifySuite(8);
    std::cout << solinv::renderVerifyText(results);
    return solinv::allPassed(results) ? 0 : 1;
}
