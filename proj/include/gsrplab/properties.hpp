#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gsrplab/bounds.hpp"

namespace gsrplab {

struct SuiteResult {
    std::string name;
    int trials = 0;
    int failures = 0;
    std::string first_failure;  // empty when clean
    bool pass() const { return failures == 0 && trials > 0; }
};

struct PropertyReport {
    std::vector<SuiteResult> suites;
    bool all_pass() const;
};

/// Randomized verification of every library-level invariant on small
/// finite-dimensional instances. Deterministic for a given (trials, seed).
PropertyReport run_property_suites(int trials, std::uint64_t seed);

/// Q-form (W Q S*) vs projector-form end-to-end operators for every scheme.
SuiteResult run_dual_formula_suite(int instances, std::uint64_t seed);

} // namespace gsrplab
