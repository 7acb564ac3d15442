#pragma once

#include <span>
#include <string>
#include <vector>

namespace dunkl {

/// One invariant of the library. `measured` is compared against `tolerance` in the
/// direction stated by `at_least` (most checks are error bounds, a few are ratios or rates).
struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double tolerance = 0.0;
    bool at_least = false;
    std::string detail;
};

/// Names of all checks in run order (kebab-case).
std::vector<std::string> check_names();

/// Runs the named checks (all of them when `only` is empty). Unknown names throw
/// std::invalid_argument before anything runs. A check that throws is reported as failed.
std::vector<CheckResult> run_checks(std::span<const std::string> only = {});

}  // namespace dunkl
