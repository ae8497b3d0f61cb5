// Acceptance suite: runs the nine validation criteria and prints one
// pass/fail line per criterion.  Exit code is nonzero when any criterion
// fails.
#include <cstdio>

#include "tpwkb/validate.hpp"

int main() {
    bool all_pass = true;
    for (const auto& r : tpwkb::run_criteria()) {
        std::printf("criterion %d (%s): %s -- %s\n", r.id, r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && r.pass;
    }
    std::printf("%s\n", all_pass ? "ALL CRITERIA PASSED" : "ACCEPTANCE FAILED");
    return all_pass ? 0 : 1;
}
