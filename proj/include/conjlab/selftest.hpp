#pragma once

#include <string>
#include <vector>

namespace conjlab {

struct SelftestResult {
  std::string module;
  std::vector<std::string> passed;
  std::vector<std::string> failed;  // "invariant: detail"
  bool ok() const { return failed.empty(); }
};

// Deterministic invariant suites, one per module. Each checks the
// documented properties on fixed inputs and never throws; violations are
// reported in the result.
SelftestResult selftest_circle();
SelftestResult selftest_conjugator();
SelftestResult selftest_poisson();
SelftestResult selftest_strip();
SelftestResult selftest_series();
SelftestResult selftest_distribution();

std::vector<SelftestResult> selftest_all();

// Empty name runs everything; returns results for the matching modules.
std::vector<SelftestResult> run_selftests(const std::string& module_name);

}  // namespace conjlab
