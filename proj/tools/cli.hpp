#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace raimi::cli {

enum ExitCode : int {
  kOk = 0,
  kFailed = 1,        // verification or oracle agreement failed
  kInvalidInput = 2,
  kInternal = 3,      // a construction invariant did not hold
};

struct RunConfig {
  std::string command;  // partition | solve | verify | profile | oracle
  std::string input;
  std::string output;   // empty: stdout
  std::string cert;
  std::string e_set;    // profile: JSON text or path
  std::string f_set;
  std::optional<int> r;
  std::optional<int> t;
  std::optional<std::int64_t> k;
  bool emit_trace = false;
};

/// Parses argv and runs one subcommand. Never throws; returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace raimi::cli
