#pragma once

#include <string>
#include <vector>

namespace spinrot {

struct CheckResult {
    std::string suite;
    std::string name;
    double measured;   // worst deviation seen
    double tolerance;
    bool passed() const { return measured <= tolerance; }
};

// Invariants: commutators, Casimir, unitarity, norm, PSD reduced densities,
// exchange symmetry, frame independence of S_A, energy conservation.
std::vector<CheckResult> invariant_checks(unsigned seed = 7);
// Closed forms against the numeric propagators.
std::vector<CheckResult> oracle_checks(unsigned seed = 11);

std::vector<CheckResult> run_selftest(unsigned seed = 7);

}  // namespace spinrot
