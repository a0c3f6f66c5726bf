#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace derange {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  std::uint64_t budget = 10'000;
  unsigned jobs = 1;
};

/// "spor-small", "alt", "psl2", "frobenius", "genpair".
std::vector<std::string> verify_suite_names();

/// Runs one suite. Throws std::invalid_argument for an unknown suite name.
std::vector<CheckResult> run_verify_suite(const std::string& suite, const VerifyOptions& opts = {});

}  // namespace derange
