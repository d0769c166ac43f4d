#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dvrp/instance.hpp"

namespace dvrp {

struct SuiteResult {
    int trials = 0;
    int failures = 0;
    std::vector<std::string> notes;  // one entry per failing trial

    bool ok() const { return failures == 0; }
};

// Randomized replay of the per-tour reduced-length bound: for random
// instances, decompositions and feasible tours, the subtours' reduced
// lengths sum to at most 1. Exact rationals throughout.
SuiteResult reduced_sum_suite(std::uint64_t seed, int trials);

// Randomized replay of subtour merging: bundles of same-component,
// same-category subtours with reduced-length sum at most 1 combine into a
// single tour of length at most D.
SuiteResult combine_suite(std::uint64_t seed, int trials);

// Randomized replay of the component-count bound: with gamma >= 20 and the
// optimum at least 2, the decomposition has at most (15/gamma) * opt
// components. Instances are drawn until the optimum reaches 2; the bound is
// vacuous below that.
SuiteResult component_count_suite(std::uint64_t seed, int trials);

}  // namespace dvrp
