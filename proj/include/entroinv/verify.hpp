#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace entroinv {

// One invariant check.  Audit-only checks report a measurement that is known
// not to hold universally (or whose universal validity is an open question);
// they never fail a run.
struct CheckResult {
  std::string name;
  bool passed;
  bool audit_only;
  std::string detail;
};

// Randomized invariant suites.  Deterministic for a fixed seed: same seed,
// byte-identical report.
std::vector<CheckResult> verify_entropy(std::uint64_t seed);
std::vector<CheckResult> verify_geometry(std::uint64_t seed);
std::vector<CheckResult> verify_solver(std::uint64_t seed);
std::vector<CheckResult> verify_bounds(std::uint64_t seed);

// Dispatch on "entropy" | "geometry" | "solver" | "bounds" | "all"; throws
// InvalidInput on anything else.
std::vector<CheckResult> verify_suite(const std::string& suite, std::uint64_t seed);

// True when every non-audit check passed.
bool all_asserted_pass(const std::vector<CheckResult>& results);

// Fixed-format pass/fail table plus a summary line.
void print_verify_report(std::ostream& os, const std::string& suite, std::uint64_t seed,
                         const std::vector<CheckResult>& results);

}  // namespace entroinv
