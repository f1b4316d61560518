#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

namespace metabel::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct SuiteOptions {
  std::size_t jobs = 1;
};

/// Runs all ten acceptance criteria in order. Exceptions inside a criterion
/// are reported as a failure of that criterion.
std::vector<CriterionResult> run_suite(const SuiteOptions& options = {});

/// One "PASS"/"FAIL" line per criterion followed by a summary line.
void print_results(std::ostream& out, const std::vector<CriterionResult>& results);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace metabel::acceptance
