#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dwpap/json_io.hpp"
#include "dwpap/schedule.hpp"

namespace dwpap {

// One verification run of a registry claim on a concrete instance.  Status is
// "pass", "fail", or "skipped" (with the reason filled in); skipped means the
// schedule was too short to reach a verdict, not that anything failed.
struct SuiteInstance {
  std::string description;
  std::string status;
  std::string reason;
  ordered_json evidence;
};

struct SuiteEntry {
  std::string id;
  std::string claim;
  std::vector<SuiteInstance> instances;
  std::string status;  // fail if any instance fails, else skipped if any skipped, else pass
};

struct SuiteReport {
  std::vector<SuiteEntry> entries;
  int passed = 0;
  int failed = 0;
  int skipped = 0;
};

// Runs the fixed registry (every entry exactly once, >= 2 instances each) on
// the given schedule.  The seed feeds only the randomized Lipschitz probes of
// the composition checks; verdicts do not depend on it.
SuiteReport run_suite(const Schedule& s, std::uint64_t seed);

ordered_json suite_json(const SuiteReport& r);

}  // namespace dwpap
