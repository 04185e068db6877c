/** @file cli.hpp
 *  @brief Command-line front end: coeff, table, verify, sum, export, import and cache. */
#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace opeforge {

/// Process exit codes.
enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitUsage = 2, kExitUnsupported = 3, kExitIO = 4 };

struct RunConfig {
  int precision = 50;   // decimal digits, ≥ 16
  int truncation = 500; // series truncation for the crosscheck, ≥ 1
  double mu = 1.0;
  std::string output_format = "text";  // text | json | csv
  std::optional<std::string> cache_path;
  void validate() const;
};

/// Runs the tool on argv-style arguments (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// CSV header used by `export --format csv`.
const std::string& csv_header();

}  // namespace opeforge
