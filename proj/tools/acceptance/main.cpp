#include <cstdlib>
#include <iostream>
#include <string>

#include "acceptance_suite.hpp"

int main(int argc, char** argv) {
  metabel::acceptance::SuiteOptions options;
  if (argc > 1) options.jobs = static_cast<std::size_t>(std::stoul(argv[1]));
  auto results = metabel::acceptance::run_suite(options);
  metabel::acceptance::print_results(std::cout, results);
  return metabel::acceptance::all_passed(results) ? EXIT_SUCCESS : EXIT_FAILURE;
}
