#include "isomean/verify.hpp"

#include <cstdio>
#include <map>

using namespace isomean;

// Runs every golden check and prints one line per acceptance criterion.
int main() {
    const VerifyReport report = run_verification();
    std::map<int, std::vector<const CheckResult*>> by_criterion;
    for (const CheckResult& c : report.checks)
        by_criterion[c.criterion].push_back(&c);
    int failed = 0;
    for (const auto& [criterion, checks] : by_criterion) {
        bool ok = true;
        double seconds = 0.0;
        for (const CheckResult* c : checks) {
            ok = ok && c->passed;
            seconds += c->seconds;
        }
        std::printf("criterion %d (%s): %s [%.2fs]\n", criterion, checks.front()->group.c_str(), ok ? "PASS" : "FAIL",
                    seconds);
        for (const CheckResult* c : checks)
            std::printf("    %-22s %s  residual %.3e  tol %.1e  %.2fs  %s\n", c->name.c_str(), c->passed ? "ok  " : "FAIL",
                        c->residual, c->tolerance, c->seconds, c->detail.c_str());
        failed += ok ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(by_criterion.size()) - failed, by_criterion.size());
    return failed == 0 ? 0 : 1;
}
