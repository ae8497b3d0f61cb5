#pragma once
#include <string>
#include <vector>

namespace tpwkb {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;  // measured numbers vs bounds
};

// The nine acceptance checks.  Each runs self-contained on the built-in
// problems (mu = t, mu = t + t^2/2, harmonic and quartic wells).
CriterionResult check_airy_core();            // 1
CriterionResult check_airy_exactness();       // 2
CriterionResult check_connection_rate();      // 3
CriterionResult check_direction_rate();       // 4
CriterionResult check_series_suite();         // 5
CriterionResult check_xc_identity();          // 6
CriterionResult check_blowup_geometry();      // 7
CriterionResult check_eigenvalues();          // 8
CriterionResult check_reference_integrity();  // 9

// Runs the requested criteria (1-based ids; empty = all nine), in order.
std::vector<CriterionResult> run_criteria(const std::vector<int>& ids = {});

} // namespace tpwkb
