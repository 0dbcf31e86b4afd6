#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace radnorm {
class Error;
}

namespace radnorm::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kInvalidInput = 2,
  kDiverged = 3,
  kOverflow = 4,
  kFitUnreliable = 5,
};

/// Runs one command. `args` excludes the program name. Documents go to
/// `out` (or the --output file); errors go to `err` as a JSON object
/// {"error": kind, "detail": message}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Exit status reported for a library error of the given kind.
int exit_code_for(const Error& e);

}  // namespace radnorm::cli
