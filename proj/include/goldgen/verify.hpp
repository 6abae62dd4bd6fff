#pragma once

// Acceptance checks. Each criterion bundles a few measured quantities with
// their thresholds; the CLI `verify` command and the acceptance test binary
// both print these.

#include <cstdint>
#include <string>
#include <vector>

namespace goldgen {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string relation = "<";  // how measured compares to threshold when passing
};

struct CriterionReport {
  int id = 0;
  std::string title;
  std::vector<CheckResult> checks;

  bool passed() const;
};

struct VerifyOptions {
  std::size_t n = 0;        // 0 -> the suite default
  double tol = 0.0;         // > 0 replaces the residual thresholds
  std::uint64_t seed = 20240607;
};

CriterionReport check_identities(const VerifyOptions& opts = {});
CriterionReport check_appendix_a(const VerifyOptions& opts = {});
CriterionReport check_iso_goldfish(const VerifyOptions& opts = {});
CriterionReport check_linear_seed(const VerifyOptions& opts = {});
CriterionReport check_generation_solvability(const VerifyOptions& opts = {});
CriterionReport check_isochrony(const VerifyOptions& opts = {});
CriterionReport check_hermite(const VerifyOptions& opts = {});
CriterionReport check_permutations(const VerifyOptions& opts = {});

const std::vector<std::string>& suite_names();
// Throws ConfigError for an unknown suite.
std::vector<CriterionReport> run_suite(const std::string& suite, const VerifyOptions& opts = {});

std::string format_check(const CheckResult& c);
// One line: PASS/FAIL, criterion number and title, worst check.
std::string format_criterion(const CriterionReport& r);

}  // namespace goldgen
