#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mcboost::harness {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Fast randomized invariant suite backing the `check` CLI subcommand.
std::vector<CheckResult> run_invariant_checks(std::uint64_t seed);

}  // namespace mcboost::harness
