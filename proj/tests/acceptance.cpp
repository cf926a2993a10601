// Acceptance suite: runs every criterion at its pinned tolerance and
// prints one PASS/FAIL line per check. Exit status is nonzero if any
// check fails.

#include <cstdio>

#include "gaugesim/verify.hpp"

int main() {
    const auto checks = gaugesim::run_acceptance_checks();
    int failures = 0;
    for (const auto& c : checks) {
        std::printf("%s  %-44s  measured %.6g  (limit %.3g)%s%s\n", c.pass ? "PASS" : "FAIL",
                    c.name.c_str(), c.measured, c.threshold, c.detail.empty() ? "" : "  -- ",
                    c.detail.c_str());
        if (!c.pass) ++failures;
    }
    std::printf("%d/%zu checks passed\n", static_cast<int>(checks.size()) - failures,
                checks.size());
    return failures == 0 ? 0 : 1;
}
