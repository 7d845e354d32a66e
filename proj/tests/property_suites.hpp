#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rht::props {

struct SuiteResult {
    std::string name;
    int cases = 0;
    int failures = 0;
    std::vector<std::string> notes; // first few failure descriptions
};

// randomized consistency suites over small exact instances; deterministic
// for a fixed seed
std::vector<SuiteResult> run_property_suites(uint64_t seed, int cases_per_suite);

} // namespace rht::props
