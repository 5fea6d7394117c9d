#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fnrep::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kParseError = 2,
  kUsageError = 3,
};

/// Default refusal threshold for census/verify domain sizes.
inline constexpr std::size_t kDefaultMaxN = 64;

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fnrep::cli
