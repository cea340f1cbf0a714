// Acceptance battery: one line per criterion, exit 0 iff all pass.

#include "weightlab/suite.hpp"

#include <cstdio>

int main() {
    const std::vector<weightlab::CriterionResult> results = weightlab::run_acceptance();
    bool all = true;
    for (const auto& r : results) {
        all = all && r.pass;
        std::printf("[%s] %d %-38s %7.2fs  %s\n", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(),
                    r.seconds, r.detail.c_str());
    }
    std::printf("%s\n", all ? "ALL CRITERIA PASS" : "CRITERIA FAILED");
    return all ? 0 : 1;
}
