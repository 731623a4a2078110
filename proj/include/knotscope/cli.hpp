#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace knotscope::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kBadInput = 3,
  kMissingData = 4,
  kStaleSpec = 5,
  kIntegrity = 6,
  kOutputExists = 7,
};

/// Runs one command line (without the program name). Results go to `out`
/// unless an output path is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);
std::string sha256_bytes(const std::string& bytes);

}  // namespace knotscope::cli
