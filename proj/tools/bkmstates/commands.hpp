#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bkm::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitUsage = 2,
  kExitIo = 3,
};

/// Runs the bkmstates command line. `args` excludes the program name.
/// Results go to --out when given, otherwise to `out`; diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Expands "2..20" and "2,4,8" style dimension lists; throws
/// std::invalid_argument on malformed input or a dimension below 1.
std::vector<int> parse_dims(const std::vector<std::string>& tokens);

}  // namespace bkm::cli
