#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace padop {

struct SuiteResult {
  std::string name;
  int trials = 0;
  int failures = 0;
  std::string notes;  // deterministic commentary, e.g. observed rates
};

struct SelftestReport {
  std::uint32_t p = 0;
  int n_max = 0;
  int prec = 0;
  std::uint64_t seed = 0;
  std::vector<SuiteResult> suites;
  bool all_passed = false;
};

// Runs every suite sequentially with a per-suite RNG derived from the seed
// and the suite name, so suite order and count never shift the draws.  The
// same arguments always produce the same report.
SelftestReport run_selftest(std::uint32_t p, int n_max, int prec,
                            std::uint64_t seed);

// Canonical JSON rendering (compact, sorted keys, no timing), suitable for
// byte-for-byte comparison between runs.
std::string selftest_report_json(const SelftestReport& report);

}  // namespace padop
