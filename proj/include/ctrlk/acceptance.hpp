#pragma once

#include <string>
#include <vector>

namespace ctrlk {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs the eight seeded verification suites (exact arithmetic throughout)
/// and returns one result per criterion.
std::vector<CriterionResult> run_acceptance();

} // namespace ctrlk
