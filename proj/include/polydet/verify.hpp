#pragma once

#include <string>
#include <vector>

#include "polydet/config.hpp"

namespace polydet {

struct CheckLine {
    std::string label;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct SuiteResult {
    std::string name;
    int criterion = 0;
    std::string title;
    std::vector<CheckLine> checks;
    double seconds = 0.0;
    double time_limit = 0.0;
    /// Set when the suite aborted with an exception.
    std::string error;

    bool passed() const;
    double max_residual() const;
};

/// Suite names in criterion order: special, ladder, theorem, deninger, explicit,
/// zeros, monodromy, continuation.
const std::vector<std::string>& suite_names();

/// Runs one suite; "all" is not accepted here. Unknown names throw InvalidArgument.
SuiteResult run_suite(const std::string& name, const EvalConfig& cfg = {},
                      const std::string& data_dir = POLYDET_DATA_DIR);

}  // namespace polydet
