#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace isoprof {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifySuite {
  std::string module;
  std::vector<CheckResult> checks;
  bool pass = true;

  void add(const std::string& name, bool ok, const std::string& detail = "");
};

/// Per-module invariant suites. Every Monte-Carlo path is seeded, so a fixed
/// seed makes the whole report byte-identical across runs.
VerifySuite verify_space_forms(std::uint64_t seed);
VerifySuite verify_warped_surface(std::uint64_t seed);
VerifySuite verify_exhaustion(std::uint64_t seed);
VerifySuite verify_ball_placement(std::uint64_t seed);
VerifySuite verify_profile(std::uint64_t seed);
VerifySuite verify_monotone_limits();

std::vector<VerifySuite> verify_all(std::uint64_t seed);

/// Versioned JSON report with one entry per suite.
std::string verify_report_json(const std::vector<VerifySuite>& suites,
                               std::uint64_t seed);

}  // namespace isoprof
