#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace jlb {

// Outcome of one named check: a stable identifier, pass/fail, and a
// human-readable detail line with the numbers that decided it.
struct CheckResult {
    std::string id;
    bool pass = false;
    std::string detail;
};

// Library-level invariant and property checks (derivative agreement,
// cumulant identities, oracle cross-agreement, grid behavior, bound
// soundness).  Deterministic for a fixed seed.
std::vector<CheckResult> run_property_checks(std::uint64_t seed);

// The twelve acceptance criteria, each as one result row.  Deterministic
// for a fixed seed.  inject_failure deliberately corrupts one tolerance so
// callers can test their failure path.
std::vector<CheckResult> run_acceptance_checks(std::uint64_t seed, bool inject_failure = false);

}  // namespace jlb
