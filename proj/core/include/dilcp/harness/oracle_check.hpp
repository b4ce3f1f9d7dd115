#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dilcp::harness {

struct OracleCheckOptions {
  /// Multiplies the infection rate handed to the simulator but not to the
  /// oracle. Test-only hook: any value other than 1 must make the K2 check fail.
  double lambda_corruption = 1.0;
  /// Replicates for the K2 and single-vertex checks.
  std::size_t replicates = 100000;
  /// Replicates per random graph in the simulation-vs-oracle suite.
  std::size_t graph_replicates = 20000;
  std::uint64_t seed = 20240601;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double statistic = 0.0;
  std::string detail;
};

struct OracleCheckReport {
  std::vector<CheckResult> checks;

  bool all_passed() const noexcept;
  /// Failing check names, comma separated.
  std::string failures() const;
};

/// Oracle-vs-simulation and oracle-vs-structural suites.
OracleCheckReport oracle_check(const OracleCheckOptions& options = {});

/// One line per check: `[PASS] name statistic=... detail`.
void print_report(std::ostream& os, const OracleCheckReport& report);

}  // namespace dilcp::harness
