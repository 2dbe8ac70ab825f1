#pragma once

#include <string>
#include <vector>

namespace pfspec::tools {

struct CheckResult {
    std::string name;
    bool ok = false;
    std::string detail;
};

/// The invariant suite behind `pfspec check`.
std::vector<CheckResult> run_checks();

}  // namespace pfspec::tools
