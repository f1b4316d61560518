#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace metabel::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertionFailed = 1;
inline constexpr int kExitParseError = 2;

/// Summary of one command run, written to the diagnostic stream as JSON.
struct RunReport {
  std::string command;
  std::map<std::string, std::uint64_t> counts;
  double seconds = 0;
  std::vector<std::pair<std::string, bool>> assertions;
  std::vector<std::string> outputs;

  void check(std::string name, bool ok) { assertions.emplace_back(std::move(name), ok); }
  bool ok() const;
  std::string to_json() const;
};

/// Parses argv, runs one subcommand, writes its artifact to `out` (or --out)
/// and the RunReport to `err`. Returns 0, 1 on a failed assertion, 2 on
/// unusable input.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace metabel::cli
