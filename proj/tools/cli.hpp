#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rauzy::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInputError = 2,
  kUsageError = 64,
  kInternalError = 70,
};

/// Runs one `rauzy` invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

}  // namespace rauzy::cli
