// Acceptance gate: evaluates every criterion via the verification suites
// and prints one line per criterion. Exit 0 only when all pass.

#include <cstdio>
#include <exception>
#include <vector>

#include "matcount/harness.hpp"

int main() {
    using namespace matcount;
    std::vector<CriterionResult> results;
    try {
        results = run_acceptance();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance run aborted: %s\n", e.what());
        return 2;
    }

    bool all = true;
    for (const CriterionResult& c : results) {
        std::printf("[%s] criterion %2d: %s (%zu cases)\n", c.passed ? "PASS" : "FAIL",
                    c.criterion, c.name.c_str(), c.rows.size());
        if (c.passed) continue;
        all = false;
        if (c.rows.empty()) {
            std::printf("       no cases produced\n");
            continue;
        }
        for (const CaseRow& row : c.rows) {
            if (row.passed) continue;
            std::printf("       %s/%s: value=%s reference=%s deviation=%s tolerance=%s [%s]\n",
                        row.suite.c_str(), row.quantity.c_str(), row.value.c_str(),
                        row.reference.c_str(), row.deviation.c_str(), row.tolerance.c_str(),
                        row.status.c_str());
        }
    }
    std::fflush(stdout);
    return all ? 0 : 1;
}
