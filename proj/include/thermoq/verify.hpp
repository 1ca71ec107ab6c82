#pragma once

#include <optional>
#include <string>
#include <vector>

namespace thermoq {

struct VerifyOptions {
    // Tolerance for closed-form vs quadrature comparisons. The invariants
    // themselves keep their own fixed tolerances.
    double quad_compare_tol = 1e-8;
    // Expansion parameter for the expanded-overlap report.
    std::optional<double> alpha;
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Names of all verification checks, in run order.
std::vector<std::string> verify_check_names();

// Run one named check. DomainError on an unknown name.
CheckResult run_verify_check(const std::string& name, const VerifyOptions& options = {});

} // namespace thermoq
