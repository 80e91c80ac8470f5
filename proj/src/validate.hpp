#pragma once
#include <string>
#include <vector>

namespace nvpoa {

struct CheckResult {
    std::string suite;
    std::string name;
    bool passed = false;
    std::string detail;
};

// Fault injection for exercising the failure path of the harness itself:
// unclamped_lower reports the raw lower bound instead of the clamped one, which
// must trip the lower >= 1 invariant deterministically.
enum class Fault { none = 0, unclamped_lower = 1 };

std::vector<CheckResult> run_invariant_suite(Fault fault = Fault::none);
std::vector<CheckResult> run_oracle_suite();

// suite is one of "invariants", "oracle", "all".
std::vector<CheckResult> run_validation(const std::string& suite, Fault fault = Fault::none);

} // namespace nvpoa
