#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace yamacone {

struct VerifyOptions {
    std::uint64_t seed = 42;
    int trials = 0;  // randomized cases per check; 0 keeps each suite's default
};

struct CheckOutcome {
    std::string suite;
    std::string check;
    bool passed = true;
    std::string summary;         // worst observed value against its tolerance
    std::string counterexample;  // JSON of the first failing case, empty on pass
};

/// curvature, symmetrization, stability, minkowski, variational.
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite in fixed order for "all". Unknown names
/// throw ParseError. Output is a pure function of the options.
std::vector<CheckOutcome> run_suite(const std::string& name, const VerifyOptions& options = {});

/// One `PASS`/`FAIL` line per check, then the first counterexample if any.
/// Returns true when every check passed.
bool print_outcomes(std::ostream& out, const std::vector<CheckOutcome>& outcomes);

}  // namespace yamacone
