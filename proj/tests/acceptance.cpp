// One PASS/FAIL line per acceptance criterion; sub-checks are indented below it.
#include <cstdio>

#include "polydet/verify.hpp"

int main() {
    polydet::EvalConfig cfg;
    int failures = 0;
    for (const auto& name : polydet::suite_names()) {
        const polydet::SuiteResult res = polydet::run_suite(name, cfg);
        const bool ok = res.passed();
        if (!ok) ++failures;
        std::printf("%s criterion %d (%s): %s  max_residual=%.3e  time=%.1fs/%.0fs\n", ok ? "PASS" : "FAIL",
                    res.criterion, res.name.c_str(), res.title.c_str(), res.max_residual(), res.seconds,
                    res.time_limit);
        for (const auto& c : res.checks)
            std::printf("    [%s] %-64s residual=%.3e tol=%.1e\n", c.passed ? "ok" : "XX", c.label.c_str(), c.residual,
                        c.tolerance);
        if (!res.error.empty()) std::printf("    error: %s\n", res.error.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failures, polydet::suite_names().size());
    return failures == 0 ? 0 : 1;
}
