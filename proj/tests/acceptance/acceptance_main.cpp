// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "kpdm_cli/checks.hpp"

#include <cstdio>
#include <exception>

int main() {
    int failed = 0;
    for (int id = 1; id <= kpdm::cli::kCriterionCount; ++id) {
        try {
            const auto report = kpdm::cli::run_criterion(id);
            std::printf("%s\n", report.summary_line().c_str());
            failed += report.passed() ? 0 : 1;
        } catch (const std::exception& e) {
            std::printf("FAIL %d: exception: %s\n", id, e.what());
            ++failed;
        }
        std::fflush(stdout);
    }
    std::printf("%d of %d criteria passed\n", kpdm::cli::kCriterionCount - failed, kpdm::cli::kCriterionCount);
    return failed == 0 ? 0 : 1;
}
