#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace slmn {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string expected;
  std::string actual;
};

struct SuiteResult {
  std::string name;
  std::string status;  // "pass" | "fail" | "error"
  std::vector<CheckResult> checks;
  long wall_time_ms = 0;
  bool resource_error = false;
  std::string error;
};

struct CaseResult {
  int m = 0, n = 0;
  std::vector<SuiteResult> suites;
};

struct ReportDocument {
  int version = 1;
  std::vector<CaseResult> cases;
};

/// prelim, decomposition, hwv, joseph, realization, beta3 (canonical order).
const std::vector<std::string>& known_suites();

struct SuiteConfig {
  std::vector<std::pair<int, int>> cases;
  std::vector<std::string> suites;  // empty = all non-slow suites
  std::string format = "text";      // "json" | "text"
  std::string out;                  // empty = stdout
  int jobs = 1;
  long mem_cap_mb = 2048;
  bool slow = false;     // gates beta3
  bool timings = false;  // default off so reports are byte-identical
};

/// Validates the configuration (throws ConfigError), runs the selected suites
/// over all cases and assembles a deterministic document.
ReportDocument run_suite(const SuiteConfig& cfg);

std::string emit_report(const ReportDocument& doc, const std::string& format);

/// 0 all pass, 1 any failing check or internal error, 2 resource error.
int exit_code(const ReportDocument& doc);

}  // namespace slmn
