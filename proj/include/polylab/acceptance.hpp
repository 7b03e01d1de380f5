#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "polylab/report.hpp"

namespace polylab {

struct CriterionInfo {
  int id = 0;
  std::string key;    // "<module>.<topic>"
  std::string title;
  double budget_ms = 0.0;
};

const std::vector<CriterionInfo>& acceptance_criteria();

struct CriterionResult {
  CriterionInfo info;
  bool passed = false;
  bool within_budget = false;
  double elapsed_ms = 0.0;
  std::string detail;
};

struct AcceptanceRun {
  RunReport report;
  std::vector<CriterionResult> results;
  bool ok() const;
};

/// Runs every criterion whose key, module or number matches `filter` (all
/// when empty), printing one PASS/FAIL line per criterion to `log`.
AcceptanceRun run_acceptance(std::uint64_t seed, std::string_view filter = {}, std::ostream* log = nullptr);

}  // namespace polylab
