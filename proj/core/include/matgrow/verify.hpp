#pragma once

#include <string>
#include <vector>

#include "matgrow/util.hpp"

namespace matgrow {

struct SuiteOptions {
  uint64_t seeds = 200;      // seeded-instance count for randomized suites
  Budget budget;
  std::string dump_dir = ".";  // failing inputs land here
};

struct SuiteResult {
  std::string name;
  bool pass = false;
  int checks = 0;
  std::string detail;               // summary, or first failure message
  std::string counterexample_path;  // nonempty when a failing input was dumped
};

const std::vector<std::string>& suite_names();
bool is_suite_name(const std::string& name);

/// Runs one named invariant suite. Unknown names throw
/// std::invalid_argument; budget exhaustion inside a suite surfaces as
/// BudgetError.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opts = {});

}  // namespace matgrow
